#pragma once

#include <span>
#include <vector>

#include "qlock/core/types.hpp"

namespace qlock {

Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);

/// Kronecker product of a list of matrices, left to right.
Matrix kron_all(std::span<const Matrix> factors);

/// Largest entrywise deviation of `m` from Hermiticity.
double hermiticity_error(const Matrix& m);

/// Largest entrywise deviation of `u^dagger u` from the identity.
double isometry_error(const Matrix& u);

Matrix hermitian_part(const Matrix& m);

/// Ascending eigenvalues of the Hermitian part of `m`.
RealVector hermitian_eigenvalues(const Matrix& m);

/// Applies a real function to the spectrum of a Hermitian matrix.
template <typename F>
Matrix hermitian_function(const Matrix& m, F&& f) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m));
  RealVector ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) ev(i) = f(ev(i));
  return es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

/// Square root of a positive semidefinite matrix (negative noise clipped).
Matrix psd_sqrt(const Matrix& m);

/// Moore-Penrose inverse square root restricted to eigenvalues above `cutoff`.
Matrix psd_inverse_sqrt(const Matrix& m, double cutoff = 1e-12);

/// Projector onto the span of eigenvectors with eigenvalue above `cutoff`.
Matrix support_projector(const Matrix& m, double cutoff = 1e-12);

/// Basis matrix |i><j| of size dim.
Matrix unit_matrix(int dim, int i, int j);

/// Unitary discrete Fourier transform, F_{jk} = exp(2 pi i jk/d)/sqrt(d).
Matrix fourier_matrix(int dim);

/// Nearest isometry (polar factor) of a tall matrix.
Matrix polar_isometry(const Matrix& m);

/// Flat (re, im, re, im, ...) encoding in row-major element order.
std::vector<double> interleave(const Matrix& m);
Matrix deinterleave(std::span<const double> data, int rows, int cols);

}  // namespace qlock
