#pragma once

#include <string>
#include <vector>

#include "spectral.hpp"

namespace gfvfa {

/// Graph chirp u_k^a = (F^a)^{-1} e_k. `initial_frequency` is 1-based.
struct ChirpSignal {
    ComplexVector values;
    double rate = 1.0;
    Index initial_frequency = 1;
    std::string basis_id;
    /// Set when a rate shift consumed the whole rate and left e_k.
    bool degenerate = false;
};

inline ChirpSignal chirp(const FrftOperator& op, Index k) {
    require(op.order != 0.0, "a must be nonzero");
    require(k >= 1 && k <= op.size(), "initial frequency k out of range");
    ChirpSignal c;
    // column k of (F^a)^H
    c.values = op.matrix.row(k - 1).adjoint();
    c.rate = op.order;
    c.initial_frequency = k;
    c.basis_id = op.basis_id;
    return c;
}

inline ChirpSignal chirp(const EigenBasis& basis, Index k, double a) {
    require(a != 0.0, "a must be nonzero");
    require(k >= 1 && k <= basis.size(), "initial frequency k out of range");
    return chirp(gfrft_matrix(basis, a), k);
}

/// Applies the order-b transform to a chirp of rate a, giving u_k^{a-b}.
/// b == a yields e_k and sets `degenerate` instead of failing.
inline ChirpSignal chirp_rate_shift(const ChirpSignal& c, const EigenBasis& basis, double b) {
    require(c.basis_id == basis.id, "chirp was synthesized on a different basis");
    ChirpSignal out = c;
    out.values = gfrft(c.values, gfrft_matrix(basis, b));
    out.rate = c.rate - b;
    out.degenerate = out.rate == 0.0;
    return out;
}

/// Inclusive, 1-based vertex range carrying the chirp with initial frequency k.
struct ChirpSegment {
    Index first = 1;
    Index last = 1;
    Index k = 1;
};

/// Sum of masked chirps (each restricted to its vertex range, not
/// renormalized) plus unmasked extra chirps, all at the operator's rate.
inline ComplexVector compose_multichirp(const FrftOperator& op, const std::vector<ChirpSegment>& segments,
                                        const std::vector<Index>& extras) {
    require(op.order != 0.0, "a must be nonzero");
    const Index n = op.size();
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    const ComplexMatrix chirps = op.inverse();
    ComplexVector x = ComplexVector::Zero(n);
    for (const auto& s : segments) {
        require(s.first >= 1 && s.last <= n && s.first <= s.last, "segment vertex range out of bounds");
        require(s.k >= 1 && s.k <= n, "segment initial frequency out of range");
        for (Index v = s.first - 1; v < s.last; ++v) {
            require(!used[static_cast<std::size_t>(v)], "segment vertex ranges overlap");
            used[static_cast<std::size_t>(v)] = 1;
            x(v) += chirps(v, s.k - 1);
        }
    }
    for (Index k : extras) {
        require(k >= 1 && k <= n, "extra initial frequency out of range");
        x += chirps.col(k - 1);
    }
    return x;
}

inline ComplexVector compose_multichirp(const EigenBasis& basis, double a, const std::vector<ChirpSegment>& segments,
                                        const std::vector<Index>& extras) {
    require(a != 0.0, "a must be nonzero");
    return compose_multichirp(gfrft_matrix(basis, a), segments, extras);
}

/// A planted multichirp: layout plus the order it is synthesized at.
struct ChirpLayout {
    double rate = 1.0;
    std::vector<ChirpSegment> segments;
    std::vector<Index> extras;

    /// Initial frequencies in segment order followed by extras.
    [[nodiscard]] std::vector<Index> planted() const {
        std::vector<Index> out;
        for (const auto& s : segments) out.push_back(s.k);
        out.insert(out.end(), extras.begin(), extras.end());
        return out;
    }

    /// The same chirps without vertex masks: every planted k as a full chirp.
    [[nodiscard]] ChirpLayout unmasked() const { return ChirpLayout{rate, {}, planted()}; }
};

/// 64-vertex sensor-network layout: u_22 on 1-24, u_7 on 25-34, u_42 on 35-64, plus u_33.
inline ChirpLayout sensor_example_layout() { return {0.7, {{1, 24, 22}, {25, 34, 7}, {35, 64, 42}}, {33}}; }

/// 64-vertex community-network layout: u_8 on 1-27, u_37 on 28-64, plus u_29.
inline ChirpLayout community_example_layout() { return {0.6, {{1, 27, 8}, {28, 64, 37}}, {29}}; }

}  // namespace gfvfa
