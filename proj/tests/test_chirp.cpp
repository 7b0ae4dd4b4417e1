#include <catch_amalgamated.hpp>

#include <gfvfa/chirp.hpp>

using namespace gfvfa;
using Catch::Matchers::Equals;

TEST_CASE("chirp at order 1 is an eigenvector", "[chirp]") {
    const EigenBasis b = eig_decompose(sensor_graph(16, 1));
    for (Index k : {1, 7, 16}) CHECK((chirp(b, k, 1.0).values - b.u.col(k - 1)).norm() < 1e-14);
}

TEST_CASE("chirps are unit norm and mutually orthogonal", "[chirp][property]") {
    for (std::uint64_t seed : {1, 2, 3}) {
        const EigenBasis b = eig_decompose(sensor_graph(20, seed, 5));
        for (double a : {0.3, 0.7, 1.4, -0.6}) {
            const FrftOperator op = gfrft_matrix(b, a);
            ComplexMatrix gram(20, 20);
            ComplexMatrix cols(20, 20);
            for (Index k = 1; k <= 20; ++k) {
                const ChirpSignal c = chirp(op, k);
                CHECK(std::abs(c.values.norm() - 1.0) < 1e-10);
                cols.col(k - 1) = c.values;
            }
            gram = cols.adjoint() * cols;
            CHECK((gram - ComplexMatrix::Identity(20, 20)).norm() < 1e-9);
        }
    }
}

TEST_CASE("rate shift identity", "[chirp][property]") {
    const EigenBasis b = eig_decompose(community_graph(32, 4));
    for (double a : {0.7, 1.2}) {
        for (double shift : {0.2, -0.5, 1.0}) {
            const ChirpSignal c = chirp(b, 9, a);
            const ChirpSignal s = chirp_rate_shift(c, b, shift);
            CHECK(s.rate == Catch::Approx(a - shift));
            CHECK(!s.degenerate);
            CHECK((s.values - chirp(b, 9, a - shift).values).norm() < 1e-8);
        }
        const ChirpSignal flat = chirp_rate_shift(chirp(b, 9, a), b, a);
        CHECK(flat.degenerate);
        ComplexVector e = ComplexVector::Zero(32);
        e(8) = 1.0;
        CHECK((flat.values - e).norm() < 1e-8);
    }
    const EigenBasis other = eig_decompose(sensor_graph(32, 4));
    CHECK_THROWS_AS(chirp_rate_shift(chirp(b, 1, 0.5), other, 0.1), InvalidArgument);
}

TEST_CASE("chirp argument checks", "[chirp]") {
    const EigenBasis b = eig_decompose(cycle_graph(8));
    CHECK_THROWS_WITH(chirp(b, 3, 0.0), Equals("a must be nonzero"));
    CHECK_THROWS_AS(chirp(b, 0, 0.5), InvalidArgument);
    CHECK_THROWS_AS(chirp(b, 9, 0.5), InvalidArgument);
}

TEST_CASE("masked multichirp composition", "[chirp]") {
    const EigenBasis b = eig_decompose(sensor_graph(12, 5, 4));
    const FrftOperator op = gfrft_matrix(b, 0.6);
    const ComplexVector x = compose_multichirp(op, {{1, 4, 2}, {5, 12, 9}}, {3});
    const ComplexVector u2 = chirp(op, 2).values, u9 = chirp(op, 9).values, u3 = chirp(op, 3).values;
    for (Index v = 0; v < 12; ++v) {
        const Complex expected = (v < 4 ? u2(v) : u9(v)) + u3(v);
        CHECK(std::abs(x(v) - expected) < 1e-14);
    }
    CHECK_THROWS_WITH(compose_multichirp(op, {{1, 5, 2}, {5, 8, 3}}, {}), Catch::Matchers::ContainsSubstring("overlap"));
    CHECK_THROWS_AS(compose_multichirp(op, {{1, 13, 2}}, {}), InvalidArgument);
    CHECK_THROWS_AS(compose_multichirp(op, {}, {0}), InvalidArgument);
    CHECK_THROWS_AS(compose_multichirp(b, 0.0, {}, {1}), InvalidArgument);
}

TEST_CASE("example layouts", "[chirp]") {
    const ChirpLayout s = sensor_example_layout();
    CHECK(s.rate == 0.7);
    CHECK(s.planted() == std::vector<Index>{22, 7, 42, 33});
    const ChirpLayout c = community_example_layout();
    CHECK(c.rate == 0.6);
    CHECK(c.planted() == std::vector<Index>{8, 37, 29});
    const ChirpLayout u = s.unmasked();
    CHECK(u.segments.empty());
    CHECK(u.extras == s.planted());
    Index covered = 0;
    for (const auto& seg : s.segments) covered += seg.last - seg.first + 1;
    CHECK(covered == 64);
}
