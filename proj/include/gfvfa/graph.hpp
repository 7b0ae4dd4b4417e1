#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "core.hpp"

namespace gfvfa {

enum class ShiftKind { laplacian, adjacency };

inline std::string to_string(ShiftKind kind) {
    return kind == ShiftKind::laplacian ? "laplacian" : "adjacency";
}

inline ShiftKind parse_shift_kind(std::string_view text) {
    if (text == "laplacian") return ShiftKind::laplacian;
    if (text == "adjacency") return ShiftKind::adjacency;
    throw InvalidArgument("unknown shift operator '" + std::string(text) + "'");
}

/// Undirected weighted graph with a dense symmetric weight matrix.
///
/// Construction validates symmetry (exact), a zero diagonal and non-negative
/// weights, so every Graph in circulation satisfies those invariants.
class Graph {
public:
    explicit Graph(RealMatrix weights, ShiftKind shift = ShiftKind::laplacian)
        : weights_(std::move(weights)), shift_(shift) {
        require(weights_.rows() >= 1, "graph needs at least one vertex");
        require(weights_.rows() == weights_.cols(), "weight matrix must be square");
        for (Index m = 0; m < weights_.rows(); ++m) {
            require(weights_(m, m) == 0.0, "weight matrix diagonal must be zero");
            for (Index n = 0; n < weights_.cols(); ++n) {
                const double w = weights_(m, n);
                require(std::isfinite(w) && w >= 0.0, "edge weights must be finite and non-negative");
                require(w == weights_(n, m), "weight matrix must be symmetric");
            }
        }
    }

    [[nodiscard]] Index size() const { return weights_.rows(); }
    [[nodiscard]] const RealMatrix& weights() const { return weights_; }
    [[nodiscard]] ShiftKind shift_kind() const { return shift_; }

    [[nodiscard]] Graph with_shift(ShiftKind shift) const { return Graph(weights_, shift); }

    [[nodiscard]] Index edge_count() const {
        Index count = 0;
        for (Index m = 0; m < size(); ++m)
            for (Index n = m + 1; n < size(); ++n)
                if (weights_(m, n) > 0.0) ++count;
        return count;
    }

private:
    RealMatrix weights_;
    ShiftKind shift_;
};

/// L = D - W with D the diagonal degree matrix.
inline RealMatrix laplacian(const Graph& g) {
    RealMatrix lap = -g.weights();
    for (Index n = 0; n < g.size(); ++n) {
        double degree = 0.0;
        for (Index m = 0; m < g.size(); ++m) degree += g.weights()(n, m);
        lap(n, n) = degree;
    }
    return lap;
}

inline RealMatrix shift_operator(const Graph& g) {
    return g.shift_kind() == ShiftKind::laplacian ? laplacian(g) : g.weights();
}

inline bool is_connected(const Graph& g) {
    std::vector<char> seen(static_cast<std::size_t>(g.size()), 0);
    std::vector<Index> stack{0};
    seen[0] = 1;
    Index visited = 1;
    while (!stack.empty()) {
        const Index v = stack.back();
        stack.pop_back();
        for (Index u = 0; u < g.size(); ++u) {
            if (g.weights()(v, u) > 0.0 && !seen[static_cast<std::size_t>(u)]) {
                seen[static_cast<std::size_t>(u)] = 1;
                ++visited;
                stack.push_back(u);
            }
        }
    }
    return visited == g.size();
}

inline Graph cycle_graph(Index n, ShiftKind shift = ShiftKind::laplacian) {
    require(n >= 3, "cycle graph needs at least 3 vertices");
    RealMatrix w = RealMatrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        const Index j = (i + 1) % n;
        w(i, j) = 1.0;
        w(j, i) = 1.0;
    }
    return Graph(std::move(w), shift);
}

/// k-nearest-neighbour graph over the rows of `points`.
///
/// Each point selects its k nearest neighbours (Euclidean; equal distances go
/// to the lower index), the selection is symmetrized by union and every
/// included edge gets weight exp(-d^2 / scale^2). Without an explicit scale
/// the mean length of the included edges is used.
inline Graph knn_graph(const RealMatrix& points, Index k, std::optional<double> scale = std::nullopt,
                       ShiftKind shift = ShiftKind::laplacian) {
    const Index m = points.rows();
    require(k > 0, "k must be positive");
    require(k < m, "k must be smaller than the number of points");
    require(points.allFinite(), "point coordinates must be finite");
    if (scale) require(std::isfinite(*scale) && *scale > 0.0, "scale must be positive");

    RealMatrix dist(m, m);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < m; ++j) dist(i, j) = (points.row(i) - points.row(j)).norm();

    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> edge =
        Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(m, m, false);
    std::vector<Index> order(static_cast<std::size_t>(m));
    for (Index i = 0; i < m; ++i) {
        std::iota(order.begin(), order.end(), Index{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](Index a, Index b) { return dist(i, a) < dist(i, b); });
        Index taken = 0;
        for (Index j : order) {
            if (j == i) continue;
            edge(i, j) = true;
            edge(j, i) = true;
            if (++taken == k) break;
        }
    }

    double s = 0.0;
    if (scale) {
        s = *scale;
    } else {
        double total = 0.0;
        Index count = 0;
        for (Index i = 0; i < m; ++i)
            for (Index j = i + 1; j < m; ++j)
                if (edge(i, j)) {
                    total += dist(i, j);
                    ++count;
                }
        s = total / static_cast<double>(count);
        require(s > 0.0, "all selected neighbours coincide; automatic scale is zero");
    }

    RealMatrix w = RealMatrix::Zero(m, m);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < m; ++j)
            if (edge(i, j)) w(i, j) = std::exp(-(dist(i, j) * dist(i, j)) / (s * s));
    return Graph(std::move(w), shift);
}

/// Seeded uniform points in the unit square (sensor-network family).
inline RealMatrix sensor_points(Index n, std::uint64_t seed) {
    Rng rng = make_rng(seed, 0x5e45);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    RealMatrix p(n, 2);
    for (Index i = 0; i < n; ++i) {
        p(i, 0) = unit(rng);
        p(i, 1) = unit(rng);
    }
    return p;
}

inline Graph sensor_graph(Index n, std::uint64_t seed, Index k = 6,
                          ShiftKind shift = ShiftKind::laplacian) {
    return knn_graph(sensor_points(n, seed), k, std::nullopt, shift);
}

inline Index community_count(Index n) {
    return std::max<Index>(2, static_cast<Index>(std::lround(std::sqrt(static_cast<double>(n)) / 2.0)));
}

/// Points clustered around round(sqrt(n)/2) seeded centres. Vertices are
/// numbered community by community (contiguous blocks of near-equal size).
inline RealMatrix community_points(Index n, std::uint64_t seed) {
    const Index c = community_count(n);
    Rng rng = make_rng(seed, 0xc044);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> spread(0.0, 0.06);
    RealMatrix centres(c, 2);
    for (Index j = 0; j < c; ++j) {
        centres(j, 0) = unit(rng);
        centres(j, 1) = unit(rng);
    }
    RealMatrix p(n, 2);
    for (Index i = 0; i < n; ++i) {
        const Index j = i * c / n;
        p(i, 0) = centres(j, 0) + spread(rng);
        p(i, 1) = centres(j, 1) + spread(rng);
    }
    return p;
}

/// k-NN graph over community points, plus one bridge edge between the
/// closest pair of points of consecutive communities so the graph is
/// connected. Bridge weights use the same Gaussian rule and scale.
inline Graph community_graph(Index n, std::uint64_t seed, Index k = 6,
                             ShiftKind shift = ShiftKind::laplacian) {
    const RealMatrix p = community_points(n, seed);
    const Graph base = knn_graph(p, k, std::nullopt, shift);
    RealMatrix w = base.weights();

    double total = 0.0;
    Index count = 0;
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j)
            if (w(i, j) > 0.0) {
                total += (p.row(i) - p.row(j)).norm();
                ++count;
            }
    const double s = total / static_cast<double>(count);

    const Index c = community_count(n);
    auto block = [&](Index j) { return std::pair<Index, Index>{(j * n + c - 1) / c, ((j + 1) * n + c - 1) / c}; };
    for (Index j = 0; j + 1 < c; ++j) {
        const auto [a0, a1] = block(j);
        const auto [b0, b1] = block(j + 1);
        Index bi = a0;
        Index bj = b0;
        double best = std::numeric_limits<double>::infinity();
        for (Index i = a0; i < a1; ++i)
            for (Index t = b0; t < b1; ++t) {
                const double d = (p.row(i) - p.row(t)).norm();
                if (d < best) {
                    best = d;
                    bi = i;
                    bj = t;
                }
            }
        const double weight = std::exp(-(best * best) / (s * s));
        if (w(bi, bj) == 0.0) {
            w(bi, bj) = weight;
            w(bj, bi) = weight;
        }
    }
    return Graph(std::move(w), shift);
}

/// Parses whitespace separated "u v w" lines (1-based, '#' comments).
/// The vertex count defaults to the largest index that appears.
inline Graph from_edge_list(std::string_view text, std::optional<Index> vertex_count = std::nullopt,
                            ShiftKind shift = ShiftKind::laplacian) {
    struct Edge {
        Index u, v;
        double w;
    };
    std::vector<Edge> edges;
    std::set<std::pair<Index, Index>> seen;
    Index max_index = 0;

    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string su, sv, sw, extra;
        if (!(fields >> su)) continue;
        const std::string where = "edge list line " + std::to_string(line_no);
        if (!(fields >> sv >> sw) || (fields >> extra)) throw ParseError(where + ": expected 'u v w'");

        long long u = 0;
        long long v = 0;
        auto parse_int = [&](const std::string& s, long long& out) {
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
            if (ec != std::errc{} || ptr != s.data() + s.size()) throw ParseError(where + ": bad vertex index '" + s + "'");
        };
        parse_int(su, u);
        parse_int(sv, v);
        double w = 0.0;
        try {
            std::size_t used = 0;
            w = std::stod(sw, &used);
            if (used != sw.size()) throw ParseError(where + ": bad weight '" + sw + "'");
        } catch (const std::logic_error&) {
            throw ParseError(where + ": bad weight '" + sw + "'");
        }
        if (u < 1 || v < 1) throw ParseError(where + ": vertex indices are 1-based");
        if (u == v) throw ParseError(where + ": self-loop on vertex " + su);
        if (!(w > 0.0) || !std::isfinite(w)) throw ParseError(where + ": weight must be positive");
        const std::pair<Index, Index> key{std::min<Index>(u, v), std::max<Index>(u, v)};
        if (!seen.insert(key).second) throw ParseError(where + ": duplicate edge " + su + "-" + sv);
        edges.push_back({static_cast<Index>(u - 1), static_cast<Index>(v - 1), w});
        max_index = std::max<Index>(max_index, std::max<Index>(u, v));
    }

    const Index n = vertex_count.value_or(max_index);
    if (n < 1) throw ParseError("edge list defines no vertices");
    RealMatrix weights = RealMatrix::Zero(n, n);
    for (const auto& e : edges) {
        if (e.u >= n || e.v >= n) throw ParseError("edge list: vertex index out of range (n=" + std::to_string(n) + ")");
        weights(e.u, e.v) = e.w;
        weights(e.v, e.u) = e.w;
    }
    return Graph(std::move(weights), shift);
}

/// Writes the graph in the edge-list format accepted by from_edge_list.
/// Weights use 17 significant digits so a read-back is bit-identical.
inline std::string to_edge_list(const Graph& g) {
    std::string out = "# vertices " + std::to_string(g.size()) + "\n# u v w\n";
    char buf[96];
    for (Index m = 0; m < g.size(); ++m)
        for (Index n = m + 1; n < g.size(); ++n) {
            const double w = g.weights()(m, n);
            if (w > 0.0) {
                std::snprintf(buf, sizeof buf, "%lld %lld %.17g\n", static_cast<long long>(m + 1),
                              static_cast<long long>(n + 1), w);
                out += buf;
            }
        }
    return out;
}

/// Reads "# vertices N" from an exported edge list, if present.
inline std::optional<Index> edge_list_vertex_hint(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        std::string hash, key;
        long long n = 0;
        if (fields >> hash >> key >> n && hash == "#" && key == "vertices" && n > 0) return static_cast<Index>(n);
    }
    return std::nullopt;
}

}  // namespace gfvfa
