#include "qlock/core/density.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "qlock/core/linalg.hpp"

namespace qlock {

namespace {

void check_dim(Eigen::Index dim) {
  if (dim < 1) throw ValidationError("density operator must have positive dimension");
  if (dim > kMaxDim) {
    std::ostringstream os;
    os << "dimension " << dim << " exceeds supported maximum " << kMaxDim;
    throw CapabilityError(os.str());
  }
}

// Digits of a flat index in a mixed-radix system, most significant first.
std::vector<int> strides_for(std::span<const int> dims) {
  std::vector<int> strides(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k) strides[k] = strides[k + 1] * dims[k + 1];
  return strides;
}

int checked_total(std::span<const int> dims, Eigen::Index expected) {
  long total = 1;
  for (int d : dims) {
    if (d < 1) throw DimensionError("subsystem dimensions must be positive");
    total *= d;
  }
  if (total != expected) {
    std::ostringstream os;
    os << "subsystem dimensions multiply to " << total << " but operator has dimension " << expected;
    throw DimensionError(os.str());
  }
  return static_cast<int>(total);
}

}  // namespace

DensityOperator DensityOperator::from_matrix(const Matrix& m) {
  if (m.rows() != m.cols()) throw ValidationError("density operator must be square");
  check_dim(m.rows());
  const double herm = hermiticity_error(m);
  if (herm > tol::kHermitian) {
    std::ostringstream os;
    os << "density operator not Hermitian (deviation " << herm << ")";
    throw ValidationError(os.str());
  }
  Matrix h = hermitian_part(m);
  const double tr = h.trace().real();
  if (std::abs(tr - 1.0) > tol::kTrace) {
    std::ostringstream os;
    os << "density operator trace " << tr << " differs from 1";
    throw ValidationError(os.str());
  }
  RealVector ev = hermitian_eigenvalues(h);
  if (ev.size() > 0 && ev(0) < -tol::kNegativeEigenvalue) {
    std::ostringstream os;
    os << "density operator has negative eigenvalue " << ev(0);
    throw ValidationError(os.str());
  }
  ev = ev.cwiseMax(0.0);
  return DensityOperator(std::move(h), std::move(ev));
}

DensityOperator DensityOperator::pure(const Vector& psi) {
  const double n = psi.norm();
  if (!(n > 0.0)) throw ValidationError("cannot build a pure state from a zero vector");
  check_dim(psi.size());
  Vector v = psi / n;
  Matrix m = v * v.adjoint();
  RealVector ev = RealVector::Zero(psi.size());
  ev(ev.size() - 1) = 1.0;
  return DensityOperator(std::move(m), std::move(ev));
}

DensityOperator DensityOperator::maximally_mixed(int dim) {
  check_dim(dim);
  return DensityOperator(Matrix::Identity(dim, dim) / static_cast<double>(dim),
                         RealVector::Constant(dim, 1.0 / dim));
}

DensityOperator DensityOperator::basis_state(int dim, int index) {
  check_dim(dim);
  if (index < 0 || index >= dim) throw ValidationError("basis index out of range");
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return pure(v);
}

DensityOperator DensityOperator::diagonal(std::span<const double> probs) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(probs.size()), static_cast<Eigen::Index>(probs.size()));
  for (size_t i = 0; i < probs.size(); ++i) m(i, i) = probs[i];
  return from_matrix(m);
}

double DensityOperator::purity() const { return eigenvalues_.squaredNorm(); }

DensityOperator mixture(std::span<const double> weights, std::span<const DensityOperator> states) {
  if (weights.size() != states.size() || states.empty()) {
    throw DimensionError("mixture needs one weight per state");
  }
  const int d = states.front().dim();
  Matrix m = Matrix::Zero(d, d);
  for (size_t i = 0; i < states.size(); ++i) {
    if (states[i].dim() != d) throw DimensionError("mixture of states with different dimensions");
    if (weights[i] < 0.0) throw ValidationError("negative mixture weight");
    m += weights[i] * states[i].matrix();
  }
  return DensityOperator::from_matrix(m);
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  return DensityOperator::from_matrix(kron(a.matrix(), b.matrix()));
}

Matrix partial_trace(const Matrix& m, std::span<const int> dims, std::span<const int> keep) {
  if (m.rows() != m.cols()) throw DimensionError("partial trace of non-square matrix");
  const int total = checked_total(dims, m.rows());
  const int n = static_cast<int>(dims.size());
  std::vector<bool> kept(n, false);
  int prev = -1;
  for (int k : keep) {
    if (k <= prev || k >= n) throw DimensionError("kept subsystem list must be increasing and in range");
    kept[k] = true;
    prev = k;
  }
  const std::vector<int> strides = strides_for(dims);
  int keep_dim = 1;
  int trace_dim = 1;
  for (int k = 0; k < n; ++k) (kept[k] ? keep_dim : trace_dim) *= dims[k];

  // Decompose every flat index into (kept index, traced index).
  std::vector<std::vector<std::pair<int, int>>> by_traced(trace_dim);
  for (int i = 0; i < total; ++i) {
    int kidx = 0;
    int tidx = 0;
    for (int k = 0; k < n; ++k) {
      const int digit = (i / strides[k]) % dims[k];
      if (kept[k]) {
        kidx = kidx * dims[k] + digit;
      } else {
        tidx = tidx * dims[k] + digit;
      }
    }
    by_traced[tidx].emplace_back(i, kidx);
  }
  Matrix out = Matrix::Zero(keep_dim, keep_dim);
  for (const auto& group : by_traced) {
    for (const auto& [ri, rk] : group) {
      for (const auto& [ci, ck] : group) out(rk, ck) += m(ri, ci);
    }
  }
  return out;
}

DensityOperator partial_trace(const DensityOperator& rho, std::span<const int> dims,
                              std::span<const int> keep) {
  return DensityOperator::from_matrix(partial_trace(rho.matrix(), dims, keep));
}

Matrix partial_transpose(const Matrix& m, std::span<const int> dims, std::span<const int> which) {
  if (m.rows() != m.cols()) throw DimensionError("partial transpose of non-square matrix");
  const int total = checked_total(dims, m.rows());
  const int n = static_cast<int>(dims.size());
  std::vector<bool> flip(n, false);
  for (int k : which) {
    if (k < 0 || k >= n) throw DimensionError("partial transpose subsystem out of range");
    flip[k] = true;
  }
  const std::vector<int> strides = strides_for(dims);
  Matrix out(total, total);
  for (int i = 0; i < total; ++i) {
    for (int j = 0; j < total; ++j) {
      int ni = 0;
      int nj = 0;
      for (int k = 0; k < n; ++k) {
        const int di = (i / strides[k]) % dims[k];
        const int dj = (j / strides[k]) % dims[k];
        ni += (flip[k] ? dj : di) * strides[k];
        nj += (flip[k] ? di : dj) * strides[k];
      }
      out(ni, nj) = m(i, j);
    }
  }
  return out;
}

}  // namespace qlock
