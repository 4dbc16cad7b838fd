#include "qlock/core/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace qlock {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Matrix kron_all(std::span<const Matrix> factors) {
  Matrix out = Matrix::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

double hermiticity_error(const Matrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double isometry_error(const Matrix& u) {
  if (u.size() == 0) return 0.0;
  return (u.adjoint() * u - Matrix::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
}

Matrix hermitian_part(const Matrix& m) { return (m + m.adjoint()) * 0.5; }

RealVector hermitian_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

Matrix psd_sqrt(const Matrix& m) {
  return hermitian_function(m, [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
}

Matrix psd_inverse_sqrt(const Matrix& m, double cutoff) {
  return hermitian_function(m, [cutoff](double x) { return x > cutoff ? 1.0 / std::sqrt(x) : 0.0; });
}

Matrix support_projector(const Matrix& m, double cutoff) {
  return hermitian_function(m, [cutoff](double x) { return x > cutoff ? 1.0 : 0.0; });
}

Matrix unit_matrix(int dim, int i, int j) {
  Matrix e = Matrix::Zero(dim, dim);
  e(i, j) = 1.0;
  return e;
}

Matrix fourier_matrix(int dim) {
  Matrix f(dim, dim);
  const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
  for (int j = 0; j < dim; ++j) {
    for (int k = 0; k < dim; ++k) {
      // Reduce the exponent mod dim before scaling to keep phases exact for large jk.
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * k) % dim) / dim;
      f(j, k) = std::polar(norm, angle);
    }
  }
  return f;
}

Matrix polar_isometry(const Matrix& m) {
  // M (M^dagger M)^{-1/2} is cheaper than an SVD when M has full column rank.
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m.adjoint() * m));
  const RealVector ev = es.eigenvalues();
  if (ev.size() > 0 && ev(0) > 1e-10 * std::max(1.0, ev(ev.size() - 1))) {
    const RealVector inv = ev.cwiseSqrt().cwiseInverse();
    return m * (es.eigenvectors() * inv.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint());
  }
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

std::vector<double> interleave(const Matrix& m) {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(m.size()) * 2);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out.push_back(m(i, j).real());
      out.push_back(m(i, j).imag());
    }
  }
  return out;
}

Matrix deinterleave(std::span<const double> data, int rows, int cols) {
  if (rows < 0 || cols < 0 || data.size() != static_cast<size_t>(rows) * cols * 2) {
    throw DimensionError("interleaved array length does not match rows*cols*2");
  }
  Matrix m(rows, cols);
  size_t at = 0;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      m(i, j) = cplx(data[at], data[at + 1]);
      at += 2;
    }
  }
  return m;
}

}  // namespace qlock
