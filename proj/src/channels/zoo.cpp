#include "qlock/channels/zoo.hpp"

#include <cmath>
#include <numbers>

#include "qlock/core/linalg.hpp"

namespace qlock {

namespace {

void check_p(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("channel parameter must lie in [0, 1]");
}

Matrix weyl(int d, int a, int b) {
  Matrix w = Matrix::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    w((j + a) % d, j) = std::polar(1.0, 2.0 * std::numbers::pi * ((b * j) % d) / d);
  }
  return w;
}

}  // namespace

KrausChannel depolarizing(int d, double p) {
  check_p(p);
  if (d < 1) throw ValidationError("dimension must be positive");
  std::vector<Matrix> ops;
  const double d2 = static_cast<double>(d) * d;
  const double w0 = 1.0 - p + p / d2;
  if (w0 > 0.0) ops.push_back(std::sqrt(w0) * Matrix::Identity(d, d));
  if (p > 0.0) {
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        if (a == 0 && b == 0) continue;
        ops.push_back(std::sqrt(p / d2) * weyl(d, a, b));
      }
    }
  }
  return KrausChannel(std::move(ops));
}

KrausChannel erasure(int d, double p) {
  check_p(p);
  std::vector<Matrix> ops;
  if (p < 1.0) {
    Matrix keep = Matrix::Zero(d + 1, d);
    keep.topRows(d) = std::sqrt(1.0 - p) * Matrix::Identity(d, d);
    ops.push_back(keep);
  }
  if (p > 0.0) {
    for (int i = 0; i < d; ++i) {
      Matrix e = Matrix::Zero(d + 1, d);
      e(d, i) = std::sqrt(p);
      ops.push_back(e);
    }
  }
  return KrausChannel(std::move(ops));
}

KrausChannel dephasing(int d, double p) {
  check_p(p);
  std::vector<Matrix> ops;
  if (p < 1.0) ops.push_back(std::sqrt(1.0 - p) * Matrix::Identity(d, d));
  if (p > 0.0) {
    for (int i = 0; i < d; ++i) ops.push_back(std::sqrt(p) * unit_matrix(d, i, i));
  }
  return KrausChannel(std::move(ops));
}

KrausChannel constant_channel(int in_dim, const DensityOperator& sigma) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(sigma.matrix());
  std::vector<Matrix> ops;
  for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j) {
    const double l = es.eigenvalues()(j);
    if (l <= 1e-15) continue;
    for (int i = 0; i < in_dim; ++i) {
      Matrix row = Matrix::Zero(1, in_dim);
      row(0, i) = 1.0;
      ops.push_back(std::sqrt(l) * es.eigenvectors().col(j) * row);
    }
  }
  return KrausChannel(std::move(ops));
}

KrausChannel amplitude_damping(double gamma) {
  check_p(gamma);
  Matrix a0(2, 2), a1(2, 2);
  a0 << 1, 0, 0, std::sqrt(1.0 - gamma);
  a1 << 0, std::sqrt(gamma), 0, 0;
  std::vector<Matrix> ops = {a0};
  if (gamma > 0.0) ops.push_back(a1);
  return KrausChannel(std::move(ops));
}

KrausChannel measure_prepare(const Povm& povm, const std::vector<DensityOperator>& states) {
  if (static_cast<int>(states.size()) != povm.size()) throw DimensionError("need one preparation per outcome");
  std::vector<Matrix> ops;
  for (int y = 0; y < povm.size(); ++y) {
    Eigen::SelfAdjointEigenSolver<Matrix> eg(povm.element(y));
    Eigen::SelfAdjointEigenSolver<Matrix> es(states[y].matrix());
    for (Eigen::Index a = 0; a < eg.eigenvalues().size(); ++a) {
      const double g = eg.eigenvalues()(a);
      if (g <= 1e-15) continue;
      for (Eigen::Index b = 0; b < es.eigenvalues().size(); ++b) {
        const double s = es.eigenvalues()(b);
        if (s <= 1e-15) continue;
        ops.push_back(std::sqrt(g * s) * es.eigenvectors().col(b) * eg.eigenvectors().col(a).adjoint());
      }
    }
  }
  return KrausChannel(std::move(ops));
}

KrausChannel random_channel(int in_dim, int out_dim, int num_kraus, Rng& rng) {
  return channel_from_isometry(random_isometry(out_dim * num_kraus, in_dim, rng), out_dim, num_kraus);
}

KrausChannel random_measure_prepare(int in_dim, int out_dim, int outcomes, Rng& rng) {
  const auto povm = Povm::from_isometry_rows(random_isometry(outcomes, in_dim, rng));
  std::vector<DensityOperator> states;
  for (int y = 0; y < outcomes; ++y) states.push_back(random_pure_state(out_dim, rng));
  return measure_prepare(povm, states);
}

KrausChannel hadamard_qc_channel(const std::vector<Matrix>& ops) {
  if (ops.empty()) throw ValidationError("need at least one operator");
  const double err = completeness_error(ops);
  if (err > tol::kKrausCompleteness) throw ValidationError("Hadamard channel operators are not complete");
  const int nx = static_cast<int>(ops.size());
  std::vector<Matrix> kraus;
  for (int x = 0; x < nx; ++x) {
    Matrix e = Matrix::Zero(nx, 1);
    e(x, 0) = 1.0;
    kraus.push_back(kron(ops[x], e));
  }
  return KrausChannel(std::move(kraus));
}

std::vector<Matrix> kraus_from_choi(const Matrix& choi, int in_dim, int out_dim, double cutoff) {
  if (choi.rows() != static_cast<Eigen::Index>(in_dim) * out_dim) throw DimensionError("Choi matrix has wrong size");
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(choi));
  std::vector<Matrix> ops;
  for (Eigen::Index a = es.eigenvalues().size() - 1; a >= 0; --a) {
    const double l = es.eigenvalues()(a);
    if (l <= cutoff) continue;
    Matrix k(out_dim, in_dim);
    for (int i = 0; i < in_dim; ++i) {
      for (int b = 0; b < out_dim; ++b) k(b, i) = std::sqrt(l) * es.eigenvectors()(i * out_dim + b, a);
    }
    ops.push_back(std::move(k));
  }
  return ops;
}

KrausChannel permute_output(const KrausChannel& ch, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != ch.out_dim()) throw DimensionError("permutation has wrong length");
  Matrix p = Matrix::Zero(ch.out_dim(), ch.out_dim());
  for (int i = 0; i < ch.out_dim(); ++i) p(perm[i], i) = 1.0;
  std::vector<Matrix> ops;
  for (const auto& a : ch.kraus_ops()) ops.push_back(p * a);
  return KrausChannel(std::move(ops));
}

}  // namespace qlock
