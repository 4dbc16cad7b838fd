#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qlock {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Largest Hilbert-space dimension any dense operator may have.
inline constexpr int kMaxDim = 256;

namespace tol {
inline constexpr double kHermitian = 1e-10;
inline constexpr double kNegativeEigenvalue = 1e-10;
inline constexpr double kTrace = 1e-10;
inline constexpr double kUnitary = 1e-10;
inline constexpr double kKrausCompleteness = 1e-10;
inline constexpr double kPovmPsd = 1e-10;
inline constexpr double kPovmSum = 1e-9;
inline constexpr double kProbabilitySum = 1e-12;
// Eigenvalues at or below this contribute nothing to an entropy.
inline constexpr double kEntropyCutoff = 1e-14;
}  // namespace tol

/// Input violates a documented invariant (non-Hermitian state, bad POVM, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operands have incompatible dimensions.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Problem size exceeds what the dense desk-scale kernels support.
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structural precondition failed (e.g. a channel lacks a required form).
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qlock
