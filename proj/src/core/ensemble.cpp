#include "qlock/core/ensemble.hpp"

#include <cmath>
#include <sstream>

#include "qlock/core/linalg.hpp"

namespace qlock {

Ensemble::Ensemble(std::vector<double> probs, std::vector<DensityOperator> states)
    : probs_(std::move(probs)), states_(std::move(states)) {
  if (probs_.empty() || probs_.size() != states_.size()) {
    throw DimensionError("ensemble needs one probability per state");
  }
  double total = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0)) throw ValidationError("ensemble probability is negative");
    total += p;
  }
  if (std::abs(total - 1.0) > tol::kProbabilitySum * static_cast<double>(probs_.size()) + tol::kProbabilitySum) {
    std::ostringstream os;
    os << "ensemble probabilities sum to " << total;
    throw ValidationError(os.str());
  }
  for (double& p : probs_) p /= total;
  const int d = states_.front().dim();
  for (const auto& s : states_) {
    if (s.dim() != d) throw DimensionError("ensemble states have different dimensions");
  }
}

Ensemble Ensemble::from_pure(std::vector<double> probs, std::span<const Vector> vectors) {
  std::vector<DensityOperator> states;
  states.reserve(vectors.size());
  for (const auto& v : vectors) states.push_back(DensityOperator::pure(v));
  return Ensemble(std::move(probs), std::move(states));
}

Ensemble Ensemble::uniform(std::vector<DensityOperator> states) {
  std::vector<double> probs(states.size(), 1.0 / static_cast<double>(states.size()));
  return Ensemble(std::move(probs), std::move(states));
}

DensityOperator Ensemble::average() const {
  Matrix m = Matrix::Zero(dim(), dim());
  for (int x = 0; x < size(); ++x) m += probs_[x] * states_[x].matrix();
  return DensityOperator::from_matrix(hermitian_part(m));
}

Ensemble Ensemble::through(const KrausChannel& ch) const {
  std::vector<DensityOperator> out;
  out.reserve(states_.size());
  for (const auto& s : states_) out.push_back(ch.apply(s));
  return Ensemble(probs_, std::move(out));
}

Povm::Povm(std::vector<Matrix> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw ValidationError("POVM needs at least one element");
  const auto d = elements_.front().rows();
  if (d > kMaxDim) throw CapabilityError("POVM dimension exceeds supported maximum");
  Matrix sum = Matrix::Zero(d, d);
  for (auto& e : elements_) {
    if (e.rows() != d || e.cols() != d) throw DimensionError("POVM elements have different shapes");
    if (hermiticity_error(e) > tol::kPovmPsd) throw ValidationError("POVM element not Hermitian");
    e = hermitian_part(e);
    const RealVector ev = hermitian_eigenvalues(e);
    if (ev(0) < -tol::kPovmPsd) {
      std::ostringstream os;
      os << "POVM element has negative eigenvalue " << ev(0);
      throw ValidationError(os.str());
    }
    sum += e;
  }
  const double err = (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (err > tol::kPovmSum) {
    std::ostringstream os;
    os << "POVM elements do not sum to identity (deviation " << err << ")";
    throw ValidationError(os.str());
  }
}

Povm Povm::from_isometry_rows(const Matrix& w) {
  std::vector<Matrix> el;
  el.reserve(w.rows());
  for (Eigen::Index y = 0; y < w.rows(); ++y) {
    const Vector v = w.row(y).adjoint();
    el.push_back(v * v.adjoint());
  }
  return Povm(std::move(el));
}

Povm Povm::standard_basis(int dim) { return from_unitary_columns(Matrix::Identity(dim, dim)); }

Povm Povm::fourier_basis(int dim) { return from_unitary_columns(fourier_matrix(dim)); }

Povm Povm::trivial(int dim) { return Povm({Matrix::Identity(dim, dim)}); }

Povm Povm::from_unitary_columns(const Matrix& u) {
  std::vector<Matrix> el;
  el.reserve(u.cols());
  for (Eigen::Index y = 0; y < u.cols(); ++y) el.push_back(u.col(y) * u.col(y).adjoint());
  return Povm(std::move(el));
}

std::vector<double> Povm::probabilities(const Matrix& rho) const {
  if (rho.rows() != dim()) throw DimensionError("POVM and state dimensions differ");
  std::vector<double> p(elements_.size());
  for (size_t y = 0; y < elements_.size(); ++y) {
    // Tr[A B] for Hermitian A, B is the real part of the elementwise product sum.
    const double v = (elements_[y].transpose().array() * rho.array()).sum().real();
    p[y] = v > 0.0 ? v : 0.0;
  }
  return p;
}

bool Povm::is_rank_one(double tol) const {
  for (const auto& e : elements_) {
    const RealVector ev = hermitian_eigenvalues(e);
    const double top = ev(ev.size() - 1);
    if (top <= 0.0) continue;
    if (ev.size() > 1 && ev(ev.size() - 2) > tol * std::max(1.0, top)) return false;
  }
  return true;
}

RealMatrix joint_distribution(const Ensemble& ens, const Povm& povm) {
  if (ens.dim() != povm.dim()) throw DimensionError("POVM does not act on the ensemble space");
  RealMatrix joint(ens.size(), povm.size());
  for (int x = 0; x < ens.size(); ++x) {
    const std::vector<double> p = povm.probabilities(ens.state(x).matrix());
    for (int y = 0; y < povm.size(); ++y) joint(x, y) = ens.prob(x) * p[y];
  }
  return joint;
}

}  // namespace qlock
