#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "distributions.hpp"
#include "parallel.hpp"

namespace gfvfa {

enum class NoiseKind { complex_circular, real_gaussian };

/// Additive white Gaussian noise. Complex-circular draws split sigma^2
/// evenly between real and imaginary parts, so E|w|^2 = sigma^2.
struct NoiseModel {
    double sigma = 0.0;
    NoiseKind kind = NoiseKind::complex_circular;
    std::uint64_t seed = 0;

    [[nodiscard]] ComplexVector draw(Index n, std::uint64_t trial) const {
        require(sigma >= 0.0 && std::isfinite(sigma), "noise sigma must be non-negative");
        Rng rng = make_rng(seed, trial);
        ComplexVector w(n);
        if (kind == NoiseKind::complex_circular) {
            std::normal_distribution<double> g(0.0, sigma / std::sqrt(2.0));
            for (Index i = 0; i < n; ++i) {
                const double re = g(rng);
                const double im = g(rng);
                w(i) = Complex(re, im);
            }
        } else {
            std::normal_distribution<double> g(0.0, sigma);
            for (Index i = 0; i < n; ++i) w(i) = g(rng);
        }
        return w;
    }
};

/// Column-wise GFT of a distribution: U^H E.
inline ComplexMatrix gfed_gft(const ComplexMatrix& e, const EigenBasis& basis) {
    require_same_size(basis.size(), e.rows(), "gfed_gft");
    return basis.u.adjoint() * e;
}

inline ComplexMatrix gfed_igft(const ComplexMatrix& e_hat, const EigenBasis& basis) {
    require_same_size(basis.size(), e_hat.rows(), "gfed_igft");
    return basis.u * e_hat;
}

inline void check_operator(const EigenBasis& basis, const FrftOperator& op) {
    require(op.basis_id == basis.id, "transform operator was built on a different basis");
}

/// E{Ehat_y(l,k)} = Ehat_x(l,k) + sigma^2 sum_i |U_a(i,k)|^2 conj(U(i,l)).
inline ComplexMatrix closed_form_mean(const ComplexMatrix& ex_hat, const EigenBasis& basis, const FrftOperator& op,
                                      double sigma) {
    check_operator(basis, op);
    require(sigma >= 0.0, "sigma must be non-negative");
    require_same_size(basis.size(), ex_hat.rows(), "closed_form_mean");
    const ComplexMatrix v = op.inverse().cwiseAbs2().cast<Complex>();
    return ex_hat + sigma * sigma * (basis.u.adjoint() * v);
}

enum class MomentForm {
    /// Isserlis-consistent expansion (seven terms).
    exact,
    /// Eight-term expansion as usually printed, including
    /// 2 sigma^4 sum_i |U_a(i,k)|^4 |U(i,l)|^2, which counts the i=j=p=q
    /// fourth moment twice.
    published,
};

/// E{|Ehat_y(l,k)|^2} under circular complex Gaussian noise for a deterministic x.
///
/// With A = U^H (x o conj(U_a)), B = U^T |U_a|^2, C = |U|^2^T |U_a|^2:
///   |Ehat_x|^2 + 2 sigma^2 Re(conj(xa_k) A B) + sigma^2 |A|^2
///   + sigma^2 |xa_k|^2 C + sigma^4 |B|^2 + sigma^4 C  [+ 2 sigma^4 |U|^2^T |U_a|^4]
inline RealMatrix closed_form_second_moment(const ComplexVector& x, const EigenBasis& basis, const FrftOperator& op,
                                            double sigma, MomentForm form = MomentForm::exact) {
    check_operator(basis, op);
    require(sigma >= 0.0, "sigma must be non-negative");
    require_same_size(basis.size(), x.size(), "closed_form_second_moment");
    const ComplexMatrix& u = basis.u;
    const ComplexMatrix ua = op.inverse();
    const ComplexVector xa = op.matrix * x;
    const RealMatrix v = ua.cwiseAbs2();
    const RealMatrix u2 = u.cwiseAbs2();

    const ComplexMatrix a = u.adjoint() * (x.asDiagonal() * ua.conjugate());
    const ComplexMatrix b = u.transpose() * v.cast<Complex>();
    const RealMatrix c = u2.transpose() * v;
    const double s2 = sigma * sigma;
    const double s4 = s2 * s2;

    const Index n = x.size();
    RealMatrix out(n, n);
    for (Index k = 0; k < n; ++k)
        for (Index l = 0; l < n; ++l) {
            const Complex exh = std::conj(xa(k)) * a(l, k);  // Ehat_x(l,k)
            double value = std::norm(exh);
            value += 2.0 * s2 * std::real(std::conj(xa(k)) * a(l, k) * b(l, k));
            value += s2 * std::norm(a(l, k));
            value += s2 * std::norm(xa(k)) * c(l, k);
            value += s4 * std::norm(b(l, k));
            value += s4 * c(l, k);
            out(l, k) = value;
        }
    if (form == MomentForm::published) out += 2.0 * s4 * (u2.transpose() * v.cwiseAbs2());
    return out;
}

/// Sample moments of Ehat_y over seeded noise draws.
struct MomentEstimate {
    ComplexMatrix mean;
    RealMatrix second;
    /// Standard errors of the real/imag parts of the mean and of the second moment.
    RealMatrix mean_re_stderr;
    RealMatrix mean_im_stderr;
    RealMatrix second_stderr;
    std::size_t trials = 0;
};

inline MomentEstimate estimate_moments(const ComplexVector& x, const EigenBasis& basis, const FrftOperator& op,
                                       const NoiseModel& noise, std::size_t trials, unsigned threads = 0) {
    check_operator(basis, op);
    require(trials >= 2, "moment estimation needs at least two trials");
    const Index n = x.size();
    constexpr std::size_t kChunk = 1024;
    const std::size_t chunks = (trials + kChunk - 1) / kChunk;

    struct Partial {
        ComplexMatrix sum;
        RealMatrix re2, im2, second, second2;
    };
    std::vector<Partial> partial(chunks);
    const ComplexMatrix uh = basis.u.adjoint();
    parallel_for(
        chunks,
        [&](std::size_t c) {
            Partial p{ComplexMatrix::Zero(n, n), RealMatrix::Zero(n, n), RealMatrix::Zero(n, n),
                      RealMatrix::Zero(n, n), RealMatrix::Zero(n, n)};
            const std::size_t end = std::min(trials, (c + 1) * kChunk);
            for (std::size_t t = c * kChunk; t < end; ++t) {
                const ComplexVector y = x + noise.draw(n, t);
                const ComplexMatrix h = uh * gfed(y, op).matrix;
                const RealMatrix mag2 = h.cwiseAbs2();
                p.sum += h;
                p.re2 += h.real().cwiseAbs2();
                p.im2 += h.imag().cwiseAbs2();
                p.second += mag2;
                p.second2 += mag2.cwiseAbs2();
            }
            partial[c] = std::move(p);
        },
        threads);

    ComplexMatrix sum = ComplexMatrix::Zero(n, n);
    RealMatrix re2 = RealMatrix::Zero(n, n), im2 = RealMatrix::Zero(n, n);
    RealMatrix second = RealMatrix::Zero(n, n), second2 = RealMatrix::Zero(n, n);
    for (const auto& p : partial) {
        sum += p.sum;
        re2 += p.re2;
        im2 += p.im2;
        second += p.second;
        second2 += p.second2;
    }
    const double m = static_cast<double>(trials);
    MomentEstimate est;
    est.trials = trials;
    est.mean = sum / m;
    est.second = second / m;
    auto stderr_of = [m](const RealMatrix& mean, const RealMatrix& sq) {
        RealMatrix var = (sq / m - mean.cwiseAbs2()) * (m / (m - 1.0));
        return RealMatrix(var.cwiseMax(0.0).cwiseSqrt() / std::sqrt(m));
    };
    est.mean_re_stderr = stderr_of(est.mean.real(), re2);
    est.mean_im_stderr = stderr_of(est.mean.imag(), im2);
    est.second_stderr = stderr_of(est.second, second2);
    return est;
}

/// Transfer matrix in the frequency/fractional-frequency domain and its
/// vertex-domain counterpart H = U Hhat.
struct FilterTransfer {
    ComplexMatrix h_hat;
    ComplexMatrix h_vertex;
    double order = 1.0;
    double epsilon = 0.0;
};

/// Hhat = (Ehat_x o conj(mean)) ./ max(second, eps). Without an explicit
/// epsilon the floor is 1e-12 times the largest second-moment entry.
inline FilterTransfer transfer_from_moments(const ComplexMatrix& ex_hat, const ComplexMatrix& mean,
                                            const RealMatrix& second, const EigenBasis& basis, double order,
                                            std::optional<double> epsilon = std::nullopt) {
    require(ex_hat.rows() == mean.rows() && ex_hat.rows() == second.rows(), "moment matrices disagree in size");
    if (epsilon) require(*epsilon > 0.0 && std::isfinite(*epsilon), "epsilon must be positive");
    double eps = epsilon.value_or(1e-12 * second.maxCoeff());
    if (!(eps > 0.0)) eps = std::numeric_limits<double>::min();

    FilterTransfer t;
    t.order = order;
    t.epsilon = eps;
    t.h_hat = ex_hat.cwiseProduct(mean.conjugate()).cwiseQuotient(second.cwiseMax(eps).cast<Complex>());
    t.h_vertex = gfed_igft(t.h_hat, basis);
    return t;
}

/// MSE-optimal GFED-domain transfer for the clean prior x and noise level sigma.
inline FilterTransfer optimal_transfer(const ComplexVector& x, const EigenBasis& basis, const FrftOperator& op,
                                       double sigma, std::optional<double> epsilon = std::nullopt,
                                       MomentForm form = MomentForm::exact) {
    check_operator(basis, op);
    const ComplexMatrix ex_hat = gfed_gft(gfed(x, op).matrix, basis);
    return transfer_from_moments(ex_hat, closed_form_mean(ex_hat, basis, op, sigma),
                                 closed_form_second_moment(x, basis, op, sigma, form), basis, op.order, epsilon);
}

/// Vertex-domain optimal filter H(n,k) evaluated term by term from the
/// closed-form display (sum over l of numerator/denominator times U(n,l)).
///
/// Intended as an independent check of U * Hhat. The numerator is taken
/// verbatim, which matches Ehat_x o conj(mean) for real eigenbases only.
inline ComplexMatrix closed_form_vertex_filter(const ComplexVector& x, const EigenBasis& basis,
                                               const FrftOperator& op, double sigma,
                                               MomentForm form = MomentForm::exact) {
    check_operator(basis, op);
    require_same_size(basis.size(), x.size(), "closed_form_vertex_filter");
    const Index n = x.size();
    const ComplexMatrix& u = basis.u;
    const ComplexMatrix ua = op.inverse();
    const ComplexVector xa = op.matrix * x;
    const double s2 = sigma * sigma;
    const double s4 = s2 * s2;

    ComplexMatrix ex(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index k = 0; k < n; ++k) ex(i, k) = x(i) * std::conj(xa(k)) * std::conj(ua(i, k));

    ComplexMatrix ratio(n, n);
    for (Index l = 0; l < n; ++l)
        for (Index k = 0; k < n; ++k) {
            Complex exh = 0.0;
            for (Index i = 0; i < n; ++i) exh += ex(i, k) * std::conj(u(i, l));

            Complex noise_mean = 0.0;
            for (Index i = 0; i < n; ++i) noise_mean += std::norm(ua(i, k)) * std::conj(u(i, l));
            const Complex numerator = std::norm(exh) + s2 * exh * noise_mean;

            Complex t2 = 0.0, t5 = 0.0;
            for (Index i = 0; i < n; ++i)
                for (Index j = 0; j < n; ++j) {
                    t2 += x(i) * std::conj(xa(k)) * std::conj(ua(i, k)) * std::norm(ua(j, k)) * std::conj(u(i, l)) * u(j, l);
                    t5 += std::conj(x(j)) * xa(k) * std::norm(ua(i, k)) * ua(j, k) * std::conj(u(i, l)) * u(j, l);
                }
            Complex t3 = 0.0;
            double t4 = 0.0, t7 = 0.0, t8 = 0.0;
            Complex t6 = 0.0;
            for (Index i = 0; i < n; ++i) {
                t3 += x(i) * std::conj(ua(i, k)) * std::conj(u(i, l));
                t4 += std::norm(xa(k)) * std::norm(ua(i, k)) * std::norm(u(i, l));
                t6 += std::norm(ua(i, k)) * u(i, l);
                t7 += std::norm(ua(i, k)) * std::norm(u(i, l));
                t8 += std::norm(ua(i, k)) * std::norm(ua(i, k)) * std::norm(u(i, l));
            }
            Complex denominator = std::norm(exh) + s2 * t2 + s2 * std::norm(t3) + s2 * t4 + s2 * t5 +
                                  s4 * std::norm(t6) + s4 * t7;
            if (form == MomentForm::published) denominator += 2.0 * s4 * t8;
            ratio(l, k) = numerator / denominator;
        }

    ComplexMatrix h = ComplexMatrix::Zero(n, n);
    for (Index v = 0; v < n; ++v)
        for (Index k = 0; k < n; ++k)
            for (Index l = 0; l < n; ++l) h(v, k) += ratio(l, k) * u(v, l);
    return h;
}

/// Filtered distribution U (Ehat_y o Hhat).
inline EnergyDistribution apply_filter(const EnergyDistribution& e_y, const FilterTransfer& t, const EigenBasis& basis) {
    require(e_y.order == t.order, "distribution and filter orders differ");
    require_same_size(t.h_hat.rows(), e_y.size(), "apply_filter");
    EnergyDistribution out;
    out.matrix = gfed_igft(gfed_gft(e_y.matrix, basis).cwiseProduct(t.h_hat), basis);
    out.order = e_y.order;
    out.kernel = e_y.kernel;
    return out;
}

struct Reconstruction {
    ComplexVector signal;
    /// Vertices whose marginal mass was negative and clamped to zero.
    Index clamped = 0;
};

/// x(n) = sqrt(max(Re sum_k E(n,k), 0)); recovers real non-negative signals.
inline Reconstruction reconstruct_from_marginal(const EnergyDistribution& e) {
    Reconstruction r;
    const RealVector mass = e.matrix.rowwise().sum().real();
    r.signal = ComplexVector::Zero(mass.size());
    for (Index v = 0; v < mass.size(); ++v) {
        if (mass(v) < 0.0) {
            ++r.clamped;
            continue;
        }
        r.signal(v) = std::sqrt(mass(v));
    }
    return r;
}

/// Ideal graph Wiener filter H_w y with H_w = x x^H / (sigma^2 + |x|^2).
inline ComplexVector wiener_baseline(const ComplexVector& x, const ComplexVector& y, double sigma) {
    require_same_size(x.size(), y.size(), "wiener_baseline");
    require(sigma >= 0.0, "sigma must be non-negative");
    const double denom = sigma * sigma + x.squaredNorm();
    if (denom == 0.0) return ComplexVector::Zero(x.size());
    return x * (x.dot(y) / denom);  // Eigen's dot conjugates the first argument
}

inline constexpr double kSnrCapDb = 300.0;

struct Metrics {
    double mse = 0.0;
    double snr_db = 0.0;
};

/// mse = |x - x~|^2 / N (or unnormalized with `raw`); snr = 20 log10(|x| / |x - x~|), capped at 300 dB.
inline Metrics metrics(const ComplexVector& x, const ComplexVector& estimate, bool raw = false) {
    require(x.size() > 0, "metrics need non-empty signals");
    require_same_size(x.size(), estimate.size(), "metrics");
    const double err2 = (x - estimate).squaredNorm();
    Metrics m;
    m.mse = raw ? err2 : err2 / static_cast<double>(x.size());
    const double signal = x.norm();
    if (err2 == 0.0) {
        m.snr_db = kSnrCapDb;
    } else if (signal == 0.0) {
        m.snr_db = -kSnrCapDb;
    } else {
        m.snr_db = std::min(kSnrCapDb, 20.0 * std::log10(signal / std::sqrt(err2)));
    }
    return m;
}

/// Squared Frobenius distance between two distributions.
inline double distribution_error(const ComplexMatrix& reference, const ComplexMatrix& estimate) {
    return (reference - estimate).squaredNorm();
}

}  // namespace gfvfa
