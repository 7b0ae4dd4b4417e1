#pragma once

#include <array>
#include <cmath>
#include <cstring>
#include <numbers>
#include <optional>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>

#include "core.hpp"
#include "graph.hpp"

namespace gfvfa {

/// Orthonormal eigenvectors (columns of `u`) and eigenvalues of a shift operator.
///
/// Bases produced by eig_decompose are real, ascending in lambda, and
/// sign-normalized. The DFT override for cycle graphs is complex and keeps
/// the DFT frequency order instead.
struct EigenBasis {
    ComplexMatrix u;
    RealVector lambda;
    bool real = true;
    std::string id;

    [[nodiscard]] Index size() const { return u.rows(); }
    /// The GFT matrix U^{-1} = U^H.
    [[nodiscard]] ComplexMatrix gft_matrix() const { return u.adjoint(); }
};

inline std::string fingerprint(const ComplexMatrix& u, const RealVector& lambda, std::string_view tag) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&h](const void* data, std::size_t bytes) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < bytes; ++i) {
            h ^= p[i];
            h *= 0x100000001b3ULL;
        }
    };
    feed(u.data(), static_cast<std::size_t>(u.size()) * sizeof(Complex));
    feed(lambda.data(), static_cast<std::size_t>(lambda.size()) * sizeof(double));
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(tag) + ":n=" + std::to_string(u.rows()) + ":" + buf;
}

/// Flips each column so its largest-magnitude entry is positive. Entries
/// within `tie` of the maximum count as ties; the lowest row wins.
inline void normalize_signs(RealMatrix& u, double tie = 1e-12) {
    for (Index c = 0; c < u.cols(); ++c) {
        const double peak = u.col(c).cwiseAbs().maxCoeff();
        Index row = 0;
        while (std::abs(u(row, c)) < peak - tie) ++row;
        if (u(row, c) < 0.0) u.col(c) *= -1.0;
    }
}

inline EigenBasis eig_decompose(const RealMatrix& z, std::string_view tag = "shift") {
    require(z.rows() == z.cols() && z.rows() >= 1, "shift operator must be a non-empty square matrix");
    require((z - z.transpose()).cwiseAbs().maxCoeff() <= 1e-10, "shift operator must be symmetric");
    const RealMatrix sym = 0.5 * (z + z.transpose());
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(sym);
    if (solver.info() != Eigen::Success) throw NumericalError("symmetric eigendecomposition failed");
    RealMatrix u = solver.eigenvectors();
    normalize_signs(u);
    EigenBasis basis;
    basis.lambda = solver.eigenvalues();
    basis.u = u.cast<Complex>();
    basis.real = true;
    basis.id = fingerprint(basis.u, basis.lambda, tag);
    return basis;
}

inline EigenBasis eig_decompose(const Graph& g) {
    return eig_decompose(shift_operator(g), to_string(g.shift_kind()));
}

/// Unitary DFT matrix, W(m,k) = exp(-2 pi i m k / n) / sqrt(n).
inline ComplexMatrix dft_matrix(Index n) {
    require(n >= 1, "DFT size must be positive");
    ComplexMatrix w(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (Index m = 0; m < n; ++m)
        for (Index k = 0; k < n; ++k) {
            // reduce m*k mod n first so large products keep full phase accuracy
            const double phase = -2.0 * std::numbers::pi * static_cast<double>((m * k) % n) / static_cast<double>(n);
            w(m, k) = std::polar(scale, phase);
        }
    return w;
}

/// Eigenbasis override for cycle graphs: U = W^H, so the GFT matrix is the
/// unitary DFT. Eigenvalues follow the DFT index order.
inline EigenBasis dft_basis(Index n, ShiftKind shift = ShiftKind::adjacency) {
    require(n >= 3, "DFT basis override is defined for cycles with n >= 3");
    EigenBasis basis;
    basis.u = dft_matrix(n).adjoint();
    basis.lambda.resize(n);
    for (Index k = 0; k < n; ++k) {
        const double c = 2.0 * std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
        basis.lambda(k) = shift == ShiftKind::adjacency ? c : 2.0 - c;
    }
    basis.real = false;
    basis.id = fingerprint(basis.u, basis.lambda, "dft");
    return basis;
}

inline ComplexVector gft(const ComplexVector& x, const EigenBasis& basis) {
    require_same_size(basis.size(), x.size(), "gft");
    return basis.u.adjoint() * x;
}

inline ComplexVector igft(const ComplexVector& xhat, const EigenBasis& basis) {
    require_same_size(basis.size(), xhat.size(), "igft");
    return basis.u * xhat;
}

namespace detail {

constexpr double kNormalityTolerance = 1e-8;

// theta in (-pi, pi]; values numerically at -pi are moved onto +pi.
inline double principal_angle(double theta) {
    if (theta <= -std::numbers::pi + 1e-9) return std::numbers::pi;
    return theta;
}

/// Principal fractional power of a real orthogonal matrix through its real
/// Schur form Q T Q^T: 1x1 blocks are +-1, 2x2 blocks are (scaled) rotations
/// whose angle is multiplied by the exponent.
inline ComplexMatrix orthogonal_power(const RealMatrix& f, double exponent) {
    const Index n = f.rows();
    Eigen::RealSchur<RealMatrix> schur(f);
    if (schur.info() != Eigen::Success) throw NumericalError("real Schur decomposition did not converge");
    const RealMatrix& t = schur.matrixT();
    const RealMatrix& q = schur.matrixU();

    ComplexMatrix block_power = ComplexMatrix::Zero(n, n);
    RealMatrix block_part = RealMatrix::Zero(n, n);
    Index i = 0;
    while (i < n) {
        if (i + 1 < n && t(i + 1, i) != 0.0) {
            const double alpha = t(i, i);
            const double beta = t(i, i + 1);
            const double gamma = t(i + 1, i);
            const double delta = t(i + 1, i + 1);
            if (beta * gamma >= 0.0) throw NumericalError("real Schur block is not a rotation");
            const double s = std::sqrt(-beta * gamma);
            const double centre = 0.5 * (alpha + delta);
            if (std::abs(std::hypot(centre, s) - 1.0) > kNormalityTolerance)
                throw NumericalError("eigenvalue off the unit circle; matrix is not orthogonal");
            const double theta = (gamma > 0.0 ? 1.0 : -1.0) * std::atan2(s, centre);
            const double d = std::sqrt(std::abs(beta) / std::abs(gamma));
            const double c = std::cos(exponent * theta);
            const double sn = std::sin(exponent * theta);
            block_power(i, i) = c;
            block_power(i, i + 1) = -sn * d;
            block_power(i + 1, i) = sn / d;
            block_power(i + 1, i + 1) = c;
            block_part.block(i, i, 2, 2) = t.block(i, i, 2, 2);
            i += 2;
        } else {
            const double v = t(i, i);
            if (std::abs(std::abs(v) - 1.0) > kNormalityTolerance)
                throw NumericalError("eigenvalue off the unit circle; matrix is not orthogonal");
            block_power(i, i) = v > 0.0 ? Complex(1.0, 0.0) : std::polar(1.0, exponent * std::numbers::pi);
            block_part(i, i) = v;
            i += 1;
        }
    }
    if ((t - block_part).norm() > kNormalityTolerance * static_cast<double>(n))
        throw NumericalError("real Schur form is not block diagonal; matrix is not normal");
    const ComplexMatrix qc = q.cast<Complex>();
    return qc * block_power * qc.adjoint();
}

/// Principal fractional power of a complex unitary matrix via complex Schur.
inline ComplexMatrix unitary_power(const ComplexMatrix& f, double exponent) {
    const Index n = f.rows();
    Eigen::ComplexSchur<ComplexMatrix> schur(f);
    if (schur.info() != Eigen::Success) throw NumericalError("complex Schur decomposition did not converge");
    const ComplexMatrix& t = schur.matrixT();
    const ComplexMatrix& q = schur.matrixU();
    ComplexMatrix diag = ComplexMatrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        const Complex v = t(i, i);
        if (std::abs(std::abs(v) - 1.0) > kNormalityTolerance)
            throw NumericalError("eigenvalue off the unit circle; matrix is not unitary");
        diag(i, i) = std::polar(1.0, exponent * principal_angle(std::arg(v)));
    }
    ComplexMatrix upper = t;
    for (Index i = 0; i < n; ++i) upper(i, i) = 0.0;
    if (upper.norm() > kNormalityTolerance * static_cast<double>(n))
        throw NumericalError("complex Schur form is not diagonal; matrix is not normal");
    return q * diag * q.adjoint();
}

}  // namespace detail

/// Principal-branch fractional power of an orthogonal/unitary matrix.
/// Real input takes the real-Schur route.
inline ComplexMatrix fractional_power(const ComplexMatrix& f, double exponent, bool real_input) {
    require(f.rows() == f.cols(), "fractional power needs a square matrix");
    require(std::isfinite(exponent), "fractional order must be finite");
    if (exponent == 0.0) return ComplexMatrix::Identity(f.rows(), f.cols());
    if (exponent == 1.0) return f;
    if (real_input) return detail::orthogonal_power(f.real(), exponent);
    return detail::unitary_power(f, exponent);
}

/// F_G^a for a fixed basis, with the order and the basis it came from.
struct FrftOperator {
    double order = 0.0;
    ComplexMatrix matrix;
    std::string basis_id;

    [[nodiscard]] Index size() const { return matrix.rows(); }
    /// (F^a)^{-1} = (F^a)^H; column k is the chirp u_k^a.
    [[nodiscard]] ComplexMatrix inverse() const { return matrix.adjoint(); }
};

inline FrftOperator gfrft_matrix(const EigenBasis& basis, double a) {
    require(std::isfinite(a), "fractional order must be finite");
    FrftOperator op;
    op.order = a;
    op.basis_id = basis.id;
    op.matrix = fractional_power(basis.gft_matrix(), a, basis.real);
    if (unitarity_defect(op.matrix) > 1e-8)
        throw NumericalError("fractional transform lost unitarity (defect " +
                             std::to_string(unitarity_defect(op.matrix)) + ")");
    return op;
}

inline ComplexVector gfrft(const ComplexVector& x, const FrftOperator& op) {
    require_same_size(op.size(), x.size(), "gfrft");
    return op.matrix * x;
}

inline ComplexVector igfrft(const ComplexVector& xa, const FrftOperator& op) {
    require_same_size(op.size(), xa.size(), "igfrft");
    return op.matrix.adjoint() * xa;
}

/// Fractional DFT of order a built from the DFT's spectral projectors.
///
/// W^4 = I, so the projector onto the eigenvalue mu in {1, -i, -1, i} is
/// (1/4) * sum_r (conj(mu) W)^r, and W^a = sum_mu mu^a P_mu with the
/// principal angle of mu. This avoids any matrix decomposition.
inline ComplexMatrix dfrft_reference(Index n, double a) {
    require(n >= 3, "DFRFT reference needs n >= 3");
    require(std::isfinite(a), "fractional order must be finite");
    const ComplexMatrix w = dft_matrix(n);
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    const std::array<double, 4> angles{0.0, -std::numbers::pi / 2.0, std::numbers::pi, std::numbers::pi / 2.0};
    ComplexMatrix result = ComplexMatrix::Zero(n, n);
    for (double theta : angles) {
        const Complex mu_conj = std::polar(1.0, -theta);
        const ComplexMatrix step = mu_conj * w;
        ComplexMatrix power = id;
        ComplexMatrix projector = ComplexMatrix::Zero(n, n);
        for (int r = 0; r < 4; ++r) {
            projector += power;
            power = power * step;
        }
        result += std::polar(1.0, a * theta) * (0.25 * projector);
    }
    return result;
}

/// Candidate eigenvector matrix for which `x` is the chirp u_k^a.
///
/// Experimental: x/|x| is completed to an orthonormal basis by modified
/// Gram-Schmidt against seeded Gaussian vectors, placed as column k of
/// (F^a)^{-1}, and the principal 1/a-th power of that matrix is returned.
/// For |a| < 1 the principal branch may wrap, so raising the result back to
/// the power a need not reproduce the completed basis.
struct SignalGraph {
    ComplexMatrix u;
    RealMatrix inverse_transform;
};

inline SignalGraph graph_from_signal(const RealVector& x, double a, Index k, std::uint64_t seed = 0) {
    const Index n = x.size();
    require(n >= 1, "signal must be non-empty");
    require(a != 0.0 && std::isfinite(a), "order a must be finite and nonzero");
    require(k >= 1 && k <= n, "index k out of range");
    const double norm = x.norm();
    require(norm > 0.0, "signal must be nonzero");

    RealMatrix basis(n, n);
    basis.col(0) = x / norm;
    Rng rng = make_rng(seed, 0x9f5);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Index filled = 1;
    int attempts = 0;
    while (filled < n) {
        if (++attempts > 100 * static_cast<int>(n)) throw NumericalError("orthonormal completion failed");
        RealVector v(n);
        for (Index i = 0; i < n; ++i) v(i) = gauss(rng);
        for (int pass = 0; pass < 2; ++pass)
            for (Index j = 0; j < filled; ++j) v -= basis.col(j).dot(v) * basis.col(j);
        const double vn = v.norm();
        if (vn < 1e-8) continue;
        basis.col(filled++) = v / vn;
    }

    // column order: completion vectors fill 1..k-1, k+1..n; the signal sits at k
    RealMatrix inverse(n, n);
    Index next = 1;
    for (Index c = 0; c < n; ++c) inverse.col(c) = (c == k - 1) ? basis.col(0) : basis.col(next++);

    SignalGraph out;
    out.inverse_transform = inverse;
    out.u = fractional_power(inverse.cast<Complex>(), 1.0 / a, true);
    if (unitarity_defect(out.u) > 1e-8) throw NumericalError("graph_from_signal produced a non-unitary matrix");
    return out;
}

}  // namespace gfvfa
