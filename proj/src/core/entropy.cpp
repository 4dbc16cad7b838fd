#include "qlock/core/entropy.hpp"

#include <cmath>
#include <limits>

#include "qlock/core/linalg.hpp"

namespace qlock {

namespace {

double plogp(double p) { return p > tol::kEntropyCutoff ? -p * std::log2(p) : 0.0; }

}  // namespace

double shannon_entropy(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) h += plogp(p);
  return h;
}

double shannon_entropy(const RealVector& probs) {
  return shannon_entropy(std::span<const double>(probs.data(), static_cast<size_t>(probs.size())));
}

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("binary entropy argument outside [0,1]");
  return plogp(p) + plogp(1.0 - p);
}

double spectral_entropy(const RealVector& eigenvalues) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) h += plogp(eigenvalues(i));
  return h < 0.0 ? 0.0 : h;
}

double von_neumann_entropy(const DensityOperator& rho) { return spectral_entropy(rho.eigenvalues()); }

double von_neumann_entropy(const Matrix& m) { return von_neumann_entropy(DensityOperator::from_matrix(m)); }

double mutual_information(const DensityOperator& joint, int dim_a, int dim_b) {
  const int dims[2] = {dim_a, dim_b};
  const int keep_a[1] = {0};
  const int keep_b[1] = {1};
  const double ha = von_neumann_entropy(partial_trace(joint, dims, keep_a));
  const double hb = von_neumann_entropy(partial_trace(joint, dims, keep_b));
  return ha + hb - von_neumann_entropy(joint);
}

double mutual_information(const RealMatrix& joint) {
  if (joint.size() == 0) throw DimensionError("empty joint distribution");
  if (joint.minCoeff() < -tol::kProbabilitySum) throw ValidationError("negative joint probability");
  const double total = joint.sum();
  if (std::abs(total - 1.0) > 1e-9) throw ValidationError("joint distribution does not sum to one");
  const RealVector px = joint.rowwise().sum();
  const RealVector py = joint.colwise().sum().transpose();
  double mi = 0.0;
  for (Eigen::Index x = 0; x < joint.rows(); ++x) {
    for (Eigen::Index y = 0; y < joint.cols(); ++y) {
      const double p = joint(x, y);
      if (p > tol::kEntropyCutoff) mi += p * std::log2(p / (px(x) * py(y)));
    }
  }
  return mi;
}

double trace_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("trace distance of mismatched operators");
  const RealVector ev = hermitian_eigenvalues(a - b);
  return ev.cwiseAbs().sum();
}

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  return trace_distance(rho.matrix(), sigma.matrix());
}

double relative_entropy(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionError("relative entropy of mismatched states");
  Eigen::SelfAdjointEigenSolver<Matrix> es(sigma.matrix());
  const RealVector sev = es.eigenvalues();
  // Tr[rho log sigma] in the eigenbasis of sigma.
  const Matrix rotated = es.eigenvectors().adjoint() * rho.matrix() * es.eigenvectors();
  double cross = 0.0;
  for (Eigen::Index i = 0; i < sev.size(); ++i) {
    const double w = rotated(i, i).real();
    if (sev(i) > tol::kEntropyCutoff) {
      cross += w * std::log2(sev(i));
    } else if (w > 1e-12) {
      return std::numeric_limits<double>::infinity();
    }
  }
  return -von_neumann_entropy(rho) - cross;
}

double variational_distance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw DimensionError("variational distance of mismatched distributions");
  double s = 0.0;
  for (size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return s;
}

}  // namespace qlock
