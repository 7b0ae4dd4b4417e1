#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gfvfa {

using Index = Eigen::Index;
using Complex = std::complex<double>;

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Thrown when an argument violates a documented precondition.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a decomposition does not meet its accuracy contract.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown by the text readers (edge lists, CSV, config files).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message) {
    if (!condition) {
        throw InvalidArgument(message);
    }
}

inline void require_same_size(Index expected, Index actual, const char* what) {
    if (expected != actual) {
        throw InvalidArgument(std::string(what) + ": dimension mismatch (expected " +
                              std::to_string(expected) + ", got " + std::to_string(actual) + ")");
    }
}

// splitmix64 finalizer; used to derive independent per-trial streams from one base seed.
constexpr std::uint64_t mix_seed(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30U)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27U)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31U);
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    return mix_seed(mix_seed(base) ^ mix_seed(stream + 0x632be59bd9b4e019ULL));
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t base, std::uint64_t stream = 0) {
    return Rng(derive_seed(base, stream));
}

inline double frobenius(const ComplexMatrix& m) { return m.norm(); }

inline double unitarity_defect(const ComplexMatrix& m) {
    return (m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols())).norm();
}

}  // namespace gfvfa
