#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>

#include <gfvfa/spectral.hpp>

using namespace gfvfa;

namespace {

const Complex I1(0.0, 1.0);

EigenBasis seeded_basis(std::uint64_t seed, Index n = 16, ShiftKind shift = ShiftKind::laplacian) {
    return eig_decompose(sensor_graph(n, seed, std::min<Index>(6, n - 1), shift));
}

}  // namespace

TEST_CASE("eigendecomposition is orthonormal, ascending and sign-normalized", "[spectral]") {
    for (auto shift : {ShiftKind::laplacian, ShiftKind::adjacency}) {
        const Graph g = sensor_graph(24, 2, 5, shift);
        const EigenBasis b = eig_decompose(g);
        CHECK(b.real);
        CHECK(unitarity_defect(b.u) < 1e-10);
        const RealMatrix u = b.u.real();
        CHECK((u * b.lambda.asDiagonal() * u.transpose() - shift_operator(g)).norm() < 1e-10);
        for (Index j = 1; j < b.lambda.size(); ++j) CHECK(b.lambda(j) >= b.lambda(j - 1));
        for (Index c = 0; c < u.cols(); ++c) {
            Index arg = 0;
            u.col(c).cwiseAbs().maxCoeff(&arg);
            CHECK(u(arg, c) > 0.0);
        }
    }
    RealMatrix asym = RealMatrix::Zero(3, 3);
    asym(0, 1) = 1.0;
    CHECK_THROWS_AS(eig_decompose(asym), InvalidArgument);
}

TEST_CASE("basis ids identify the basis", "[spectral]") {
    CHECK(seeded_basis(1).id == seeded_basis(1).id);
    CHECK(seeded_basis(1).id != seeded_basis(2).id);
    CHECK(dft_basis(8).id != seeded_basis(1, 8).id);
}

TEST_CASE("square root of an involution", "[spectral]") {
    // F = [[0,1],[1,0]] has F^2 = I, so F^{1/2} = ((1+i)/2) I + ((1-i)/2) F
    ComplexMatrix f(2, 2);
    f << 0, 1, 1, 0;
    const ComplexMatrix expected = 0.5 * (1.0 + I1) * ComplexMatrix::Identity(2, 2) + 0.5 * (1.0 - I1) * f;
    CHECK((fractional_power(f, 0.5, true) - expected).norm() < 1e-12);
    CHECK((fractional_power(f, 0.5, false) - expected).norm() < 1e-12);
}

TEST_CASE("plane rotation powers scale the angle", "[spectral]") {
    const double theta = 0.9;
    ComplexMatrix r(2, 2);
    r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    for (double a : {0.25, 0.5, 1.7, -0.4}) {
        ComplexMatrix expected(2, 2);
        expected << std::cos(a * theta), -std::sin(a * theta), std::sin(a * theta), std::cos(a * theta);
        CHECK((fractional_power(r, a, true) - expected).norm() < 1e-12);
    }
}

TEST_CASE("orders 0 and 1 are exact", "[spectral]") {
    const EigenBasis b = seeded_basis(3);
    CHECK(gfrft_matrix(b, 0.0).matrix == ComplexMatrix::Identity(16, 16));
    CHECK(gfrft_matrix(b, 1.0).matrix == b.gft_matrix());
    CHECK((gfrft_matrix(b, -1.0).matrix - b.u).norm() < 1e-10);
    CHECK((gfrft_matrix(b, 2.0).matrix - b.gft_matrix() * b.gft_matrix()).norm() < 1e-10);
}

TEST_CASE("index additivity and unitarity", "[spectral][property]") {
    Rng rng = make_rng(77);
    std::uniform_real_distribution<double> order(-2.0, 2.0);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const EigenBasis b = seeded_basis(seed, 8 + 8 * static_cast<Index>(seed % 3));
        for (int rep = 0; rep < 4; ++rep) {
            const double a = order(rng);
            const double c = order(rng);
            const ComplexMatrix fa = gfrft_matrix(b, a).matrix;
            const ComplexMatrix fc = gfrft_matrix(b, c).matrix;
            CHECK((fa * fc - gfrft_matrix(b, a + c).matrix).norm() < 1e-8);
            CHECK(unitarity_defect(fa) < 1e-10);
            CHECK((gfrft_matrix(b, -a).matrix - fa.adjoint()).norm() < 1e-8);
        }
    }
}

TEST_CASE("continuity in the order", "[spectral][property]") {
    const EigenBasis b = seeded_basis(4, 32);
    for (double a : {0.1, 0.5, 0.9, 1.3}) {
        for (double delta : {1e-3, 1e-2, 0.1}) {
            const double gap = (gfrft_matrix(b, a).matrix - gfrft_matrix(b, a + delta).matrix).norm();
            CHECK(gap <= 10.0 * delta * 32);
        }
    }
}

TEST_CASE("adjacency bases with negative eigenvalues work too", "[spectral]") {
    const EigenBasis b = seeded_basis(5, 16, ShiftKind::adjacency);
    const ComplexMatrix half = gfrft_matrix(b, 0.5).matrix;
    CHECK((half * half - b.gft_matrix()).norm() < 1e-9);
}

TEST_CASE("DFT basis and the projector reference", "[spectral][dft]") {
    for (Index n : {8, 16}) {
        const EigenBasis d = dft_basis(n);
        CHECK(!d.real);
        CHECK((d.gft_matrix() - dft_matrix(n)).norm() < 1e-12);
        CHECK(d.lambda(1) == Catch::Approx(2.0 * std::cos(2.0 * std::numbers::pi / n)));
        CHECK(dft_basis(n, ShiftKind::laplacian).lambda(0) == Catch::Approx(0.0).margin(1e-15));
        // the reference is built without decompositions; check its endpoints independently
        CHECK((dfrft_reference(n, 0.0) - ComplexMatrix::Identity(n, n)).norm() < 1e-12);
        CHECK((dfrft_reference(n, 1.0) - dft_matrix(n)).norm() < 1e-12);
        for (double a : {0.25, 0.5, 1.5, -0.7})
            CHECK((gfrft_matrix(d, a).matrix - dfrft_reference(n, a)).norm() < 1e-8);
    }
}

TEST_CASE("cycle DFT basis diagonalizes the cycle", "[spectral][dft]") {
    const Index n = 12;
    const EigenBasis d = dft_basis(n);
    const ComplexMatrix a = cycle_graph(n, ShiftKind::adjacency).weights().cast<Complex>();
    CHECK((a * d.u - d.u * d.lambda.cast<Complex>().asDiagonal()).norm() < 1e-12);
}

TEST_CASE("gft round trip and Parseval", "[spectral]") {
    const EigenBasis b = seeded_basis(6);
    Rng rng = make_rng(6);
    std::normal_distribution<double> g;
    ComplexVector x(16);
    for (auto& v : x) v = Complex(g(rng), g(rng));
    CHECK((igft(gft(x, b), b) - x).norm() < 1e-12);
    CHECK(gft(x, b).norm() == Catch::Approx(x.norm()).epsilon(1e-12));
    const FrftOperator op = gfrft_matrix(b, 0.37);
    CHECK((igfrft(gfrft(x, op), op) - x).norm() < 1e-12);
    CHECK_THROWS_AS(gft(ComplexVector::Zero(5), b), InvalidArgument);
}

TEST_CASE("non-orthogonal input is rejected", "[spectral]") {
    ComplexMatrix m(2, 2);
    m << 2, 0, 0, 1;
    CHECK_THROWS_AS(fractional_power(m, 0.5, true), NumericalError);
    CHECK_THROWS_AS(fractional_power(m, 0.5, false), NumericalError);
    ComplexMatrix shear(2, 2);
    shear << 1, 1, 0, 1;
    CHECK_THROWS_AS(fractional_power(shear, 0.5, false), NumericalError);
}

TEST_CASE("graph from a signal", "[spectral]") {
    RealVector x(6);
    x << 1, 2, 0, -1, 3, 0.5;
    const SignalGraph s = graph_from_signal(x, 1.0, 3, 42);
    CHECK(unitarity_defect(s.inverse_transform.cast<Complex>()) < 1e-12);
    CHECK((s.inverse_transform.col(2) - x / x.norm()).norm() < 1e-14);
    CHECK((s.u - s.inverse_transform.cast<Complex>()).norm() < 1e-14);
    const SignalGraph t = graph_from_signal(x, 2.0, 1, 42);
    CHECK(unitarity_defect(t.u) < 1e-8);
    CHECK((t.u * t.u - t.inverse_transform.cast<Complex>()).norm() < 1e-8);
    CHECK_THROWS_AS(graph_from_signal(x, 0.0, 1), InvalidArgument);
    CHECK_THROWS_AS(graph_from_signal(RealVector::Zero(4), 1.0, 1), InvalidArgument);
}
