#include "qlock/core/random.hpp"

#include <cmath>
#include <numbers>

namespace qlock {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::uniform_index(std::uint64_t n) {
  if (n == 0) throw ValidationError("uniform_index on empty range");
  // Rejection sampling keeps the draw exactly uniform.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1;
  do {
    u1 = uniform01();
  } while (u1 <= 0.0);
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(t);
  has_spare_ = true;
  return r * std::cos(t);
}

cplx Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return cplx(re, im) * std::numbers::sqrt2 * 0.5;
}

Matrix haar_unitary(int dim, Rng& rng) {
  if (dim < 1) throw ValidationError("Haar unitary needs dim >= 1");
  if (dim > kMaxDim) throw CapabilityError("Haar unitary dimension exceeds supported maximum");
  Matrix z(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) z(i, j) = rng.complex_normal();
  }
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const double a = std::abs(r(j, j));
    const cplx phase = a > 0.0 ? r(j, j) / a : cplx(1.0, 0.0);
    q.col(j) *= phase;
  }
  return q;
}

Matrix haar_unitary(int dim, std::uint64_t seed) {
  Rng rng(seed);
  return haar_unitary(dim, rng);
}

Matrix random_isometry(int rows, int cols, Rng& rng) {
  if (cols > rows) throw DimensionError("isometry needs cols <= rows");
  return haar_unitary(rows, rng).leftCols(cols);
}

Vector random_pure_vector(int dim, Rng& rng) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.complex_normal();
  return v / v.norm();
}

DensityOperator random_pure_state(int dim, Rng& rng) { return DensityOperator::pure(random_pure_vector(dim, rng)); }

DensityOperator random_density(int dim, Rng& rng, int rank) {
  const int k = rank <= 0 ? dim : rank;
  Matrix g(dim, k);
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < dim; ++i) g(i, j) = rng.complex_normal();
  }
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityOperator::from_matrix((m + m.adjoint()) * 0.5);
}

std::vector<double> random_probability(int n, Rng& rng) {
  std::vector<double> p(n);
  double total = 0.0;
  for (auto& x : p) {
    x = rng.exponential();
    total += x;
  }
  for (auto& x : p) x /= total;
  return p;
}

}  // namespace qlock
