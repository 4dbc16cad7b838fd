#pragma once

#include <span>

#include "qlock/core/types.hpp"

namespace qlock {

/// Hermitian, positive, unit-trace matrix. Immutable once constructed.
///
/// Construction validates the invariants (Hermitian within 1e-10, eigenvalues
/// no lower than -1e-10, trace 1 within 1e-10) and caches the spectrum with
/// the small negative noise clipped to zero.
class DensityOperator {
 public:
  /// Validates and stores `m`. Throws ValidationError on violation and
  /// CapabilityError above kMaxDim.
  static DensityOperator from_matrix(const Matrix& m);

  /// |psi><psi| / <psi|psi>. Throws ValidationError for a zero vector.
  static DensityOperator pure(const Vector& psi);

  static DensityOperator maximally_mixed(int dim);
  static DensityOperator basis_state(int dim, int index);
  static DensityOperator diagonal(std::span<const double> probs);

  const Matrix& matrix() const { return matrix_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }

  /// Ascending eigenvalues, clipped at zero.
  const RealVector& eigenvalues() const { return eigenvalues_; }

  /// Tr[rho^2].
  double purity() const;

 private:
  DensityOperator(Matrix m, RealVector ev) : matrix_(std::move(m)), eigenvalues_(std::move(ev)) {}

  Matrix matrix_;
  RealVector eigenvalues_;
};

/// Mixture sum_i w_i rho_i; weights must be a probability vector.
DensityOperator mixture(std::span<const double> weights, std::span<const DensityOperator> states);

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);

/// Partial trace of a matrix over the subsystems NOT listed in `keep`.
/// `dims` gives the local dimension of each tensor factor; `keep` must be
/// strictly increasing. Throws DimensionError when dims do not factorize.
Matrix partial_trace(const Matrix& m, std::span<const int> dims, std::span<const int> keep);

DensityOperator partial_trace(const DensityOperator& rho, std::span<const int> dims,
                              std::span<const int> keep);

/// Partial transpose of the listed subsystems.
Matrix partial_transpose(const Matrix& m, std::span<const int> dims, std::span<const int> which);

}  // namespace qlock
