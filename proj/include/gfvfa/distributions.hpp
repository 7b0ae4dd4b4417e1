#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>

#include "spectral.hpp"

namespace gfvfa {

struct KernelTag {
    enum class Kind { delta, choi_williams, custom };
    Kind kind = Kind::delta;
    double gamma = 0.0;
    std::string name = "delta";
};

/// Vertex-by-frequency distribution: rows are vertices n, columns spectral indices k.
struct EnergyDistribution {
    ComplexMatrix matrix;
    double order = 1.0;
    KernelTag kernel;

    [[nodiscard]] Index size() const { return matrix.rows(); }
};

/// Frequency-domain kernel phi(p, k, q) with 0-based indices.
///
/// `unbiased` (sum_k phi = 1) and `diagonal_delta` (phi(p,k,p) = delta(p-k))
/// are what the kernel claims about itself; the test suite checks them.
struct SpectralKernel {
    std::function<double(Index p, Index k, Index q)> evaluate;
    KernelTag tag;
    bool unbiased = false;
    bool diagonal_delta = false;

    /// Dense table with row p + q*N and column k.
    [[nodiscard]] RealMatrix table(Index n) const {
        RealMatrix t(n * n, n);
        for (Index q = 0; q < n; ++q)
            for (Index p = 0; p < n; ++p)
                for (Index k = 0; k < n; ++k) {
                    const double v = evaluate(p, k, q);
                    if (!std::isfinite(v)) throw NumericalError("kernel '" + tag.name + "' returned a non-finite value");
                    t(p + q * n, k) = v;
                }
        return t;
    }
};

/// phi(p,k,q) = delta(q - k): collapses the generalized distribution onto the GFED.
inline SpectralKernel delta_kernel() {
    SpectralKernel kernel;
    kernel.evaluate = [](Index, Index k, Index q) { return k == q ? 1.0 : 0.0; };
    kernel.tag = KernelTag{};
    kernel.unbiased = true;
    kernel.diagonal_delta = true;
    return kernel;
}

/// Choi-Williams kernel over the basis eigenvalues.
///
/// For lambda_p != lambda_q the weight is exp(-gamma |l_k - l_q| / |l_p - l_q|)
/// normalized over k. On p == q, and on repeated eigenvalues with p != q, the
/// kernel is delta(k - q).
inline SpectralKernel choi_williams_kernel(const RealVector& lambda, double gamma) {
    require(gamma > 0.0 && std::isfinite(gamma), "Choi-Williams gamma must be positive");
    const Index n = lambda.size();
    RealMatrix weight(n * n, n);
    for (Index q = 0; q < n; ++q)
        for (Index p = 0; p < n; ++p) {
            const double gap = std::abs(lambda(p) - lambda(q));
            if (p == q || gap == 0.0) {
                for (Index k = 0; k < n; ++k) weight(p + q * n, k) = k == q ? 1.0 : 0.0;
                continue;
            }
            double total = 0.0;
            for (Index k = 0; k < n; ++k) {
                const double e = std::exp(-gamma * std::abs(lambda(k) - lambda(q)) / gap);
                weight(p + q * n, k) = e;
                total += e;
            }
            weight.row(p + q * n) /= total;
        }

    SpectralKernel kernel;
    kernel.evaluate = [weight = std::move(weight), n](Index p, Index k, Index q) { return weight(p + q * n, k); };
    kernel.tag = KernelTag{KernelTag::Kind::choi_williams, gamma, "choi-williams"};
    kernel.unbiased = true;
    kernel.diagonal_delta = true;
    return kernel;
}

inline SpectralKernel custom_kernel(std::function<double(Index, Index, Index)> fn, std::string name,
                                    bool unbiased = false, bool diagonal_delta = false) {
    SpectralKernel kernel;
    kernel.evaluate = std::move(fn);
    kernel.tag = KernelTag{KernelTag::Kind::custom, 0.0, std::move(name)};
    kernel.unbiased = unbiased;
    kernel.diagonal_delta = diagonal_delta;
    return kernel;
}

/// E(n,k) = x(n) conj(xhat_a(k)) conj(u_k^a(n)).
inline EnergyDistribution gfed(const ComplexVector& x, const FrftOperator& op) {
    require_same_size(op.size(), x.size(), "gfed");
    const ComplexVector xa = op.matrix * x;
    const ComplexMatrix chirps = op.inverse();
    const Index n = x.size();
    EnergyDistribution e;
    e.matrix.resize(n, n);
    for (Index k = 0; k < n; ++k)
        for (Index v = 0; v < n; ++v) e.matrix(v, k) = x(v) * std::conj(xa(k)) * std::conj(chirps(v, k));
    e.order = op.order;
    e.kernel = KernelTag{};
    return e;
}

inline EnergyDistribution gfed(const ComplexVector& x, const EigenBasis& basis, double a) {
    return gfed(x, gfrft_matrix(basis, a));
}

/// G(n,k) = sum_{p,q} xa(p) conj(xa(q)) u_p^a(n) conj(u_q^a(n)) phi(p,k,q).
///
/// Evaluated as one (N^2)-long dot product per output entry against the
/// kernel table, so the summation order is fixed.
inline EnergyDistribution gfgd(const ComplexVector& x, const FrftOperator& op, const SpectralKernel& kernel) {
    require_same_size(op.size(), x.size(), "gfgd");
    const Index n = x.size();
    const RealMatrix phi = kernel.table(n);
    const ComplexVector xa = op.matrix * x;
    const ComplexMatrix weighted = op.inverse() * xa.asDiagonal();  // (n, p) -> xa(p) u_p^a(n)

    EnergyDistribution g;
    g.matrix.resize(n, n);
    Eigen::RowVectorXcd outer(n * n);
    for (Index v = 0; v < n; ++v) {
        for (Index q = 0; q < n; ++q) {
            const Complex cq = std::conj(weighted(v, q));
            for (Index p = 0; p < n; ++p) outer(p + q * n) = weighted(v, p) * cq;
        }
        g.matrix.row(v) = outer * phi;
    }
    g.order = op.order;
    g.kernel = kernel.tag;
    return g;
}

inline EnergyDistribution gfgd(const ComplexVector& x, const EigenBasis& basis, double a, const SpectralKernel& kernel) {
    return gfgd(x, gfrft_matrix(basis, a), kernel);
}

/// Vertex-vertex kernel varphi(m, n, t), 0-based.
struct DualKernel {
    std::function<double(Index m, Index n, Index t)> evaluate;
    std::string name;

    /// Dense table with row m + t*N and column n.
    [[nodiscard]] RealMatrix table(Index size) const {
        RealMatrix out(size * size, size);
        for (Index t = 0; t < size; ++t)
            for (Index m = 0; m < size; ++m)
                for (Index v = 0; v < size; ++v) {
                    const double w = evaluate(m, v, t);
                    if (!std::isfinite(w)) throw NumericalError("dual kernel '" + name + "' returned a non-finite value");
                    out(m + t * size, v) = w;
                }
        return out;
    }
};

/// varphi(m,n,t) = delta(m - n); gives the vertex marginal.
inline DualKernel dual_delta_kernel() {
    return {[](Index m, Index v, Index) { return m == v ? 1.0 : 0.0; }, "dual-delta"};
}

/// varphi(m,n,t) = 1/N; sums to one over n and so gives the frequency marginal.
inline DualKernel dual_uniform_kernel(Index size) {
    const double w = 1.0 / static_cast<double>(size);
    return {[w](Index, Index, Index) { return w; }, "dual-uniform"};
}

/// Vertex-vertex form:
/// G(n,k) = sum_{m,t} x(m) conj(x(t)) conj(u_k^a(m)) u_k^a(t) varphi(m,n,t).
/// With varphi = delta(m-n) this is exactly the GFED.
inline EnergyDistribution gfgd_dual(const ComplexVector& x, const FrftOperator& op, const DualKernel& kernel) {
    require_same_size(op.size(), x.size(), "gfgd_dual");
    const Index n = x.size();
    const RealMatrix psi = kernel.table(n);
    const ComplexMatrix chirps = op.inverse();

    EnergyDistribution g;
    g.matrix.resize(n, n);
    Eigen::RowVectorXcd outer(n * n);
    ComplexVector b(n);
    for (Index k = 0; k < n; ++k) {
        for (Index m = 0; m < n; ++m) b(m) = x(m) * std::conj(chirps(m, k));
        for (Index t = 0; t < n; ++t) {
            const Complex ct = std::conj(b(t));
            for (Index m = 0; m < n; ++m) outer(m + t * n) = b(m) * ct;
        }
        g.matrix.col(k) = (outer * psi).transpose();
    }
    g.order = op.order;
    g.kernel = KernelTag{KernelTag::Kind::custom, 0.0, kernel.name};
    return g;
}

/// Real parts of a marginal plus the largest imaginary residue seen.
struct Marginal {
    RealVector values;
    double max_imag = 0.0;

    [[nodiscard]] bool clean(double tolerance = 1e-9) const { return max_imag <= tolerance; }
};

namespace detail {
inline Marginal to_marginal(const ComplexVector& sums) {
    return {sums.real(), sums.size() ? sums.imag().cwiseAbs().maxCoeff() : 0.0};
}
}  // namespace detail

/// Row sums; equals |x(n)|^2 for the GFED.
inline Marginal vertex_marginal(const EnergyDistribution& e) {
    return detail::to_marginal(e.matrix.rowwise().sum());
}

/// Column sums; equals |xhat_a(k)|^2 for the GFED.
inline Marginal frequency_marginal(const EnergyDistribution& e) {
    return detail::to_marginal(e.matrix.colwise().sum().transpose());
}

/// sum_n sum_k n^m G(n,k) with 1-based n.
inline Complex vertex_moment(const EnergyDistribution& e, int power) {
    Complex total = 0.0;
    for (Index v = 0; v < e.size(); ++v) total += std::pow(static_cast<double>(v + 1), power) * e.matrix.row(v).sum();
    return total;
}

/// sum_n sum_k k^m G(n,k) with 1-based k.
inline Complex frequency_moment(const EnergyDistribution& e, int power) {
    Complex total = 0.0;
    for (Index k = 0; k < e.size(); ++k) total += std::pow(static_cast<double>(k + 1), power) * e.matrix.col(k).sum();
    return total;
}

enum class EntropyForm {
    /// -sum |D| log2 |D| after scaling to sum |D|^2 = 1.
    linear,
    /// -sum |D|^2 log2 |D|^2 after the same scaling.
    quadratic,
};

inline double shannon_entropy(const ComplexMatrix& d, EntropyForm form = EntropyForm::linear) {
    const double energy = d.squaredNorm();
    if (!(energy > 0.0)) throw InvalidArgument("entropy of an all-zero distribution is undefined");
    const double scale = 1.0 / std::sqrt(energy);
    double total = 0.0;
    for (Index j = 0; j < d.cols(); ++j)
        for (Index i = 0; i < d.rows(); ++i) {
            const double mag = std::abs(d(i, j)) * scale;
            if (mag == 0.0) continue;
            if (form == EntropyForm::linear) {
                total -= mag * std::log2(mag);
            } else {
                const double p = mag * mag;
                total -= p * std::log2(p);
            }
        }
    return total;
}

inline double shannon_entropy(const EnergyDistribution& e, EntropyForm form = EntropyForm::linear) {
    return shannon_entropy(e.matrix, form);
}

}  // namespace gfvfa
