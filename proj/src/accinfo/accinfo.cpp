#include "qlock/accinfo/accinfo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qlock/core/entropy.hpp"
#include "qlock/core/linalg.hpp"
#include "qlock/core/parallel.hpp"
#include "qlock/core/random.hpp"

namespace qlock {

double acc_info_of_measurement(const Ensemble& ens, const Povm& povm) {
  const RealMatrix joint = joint_distribution(ens, povm);
  const double total = joint.sum();
  // Clipping tiny negative probabilities can shave the total; renormalize.
  return std::max(0.0, mutual_information(joint / total));
}

double holevo_chi(const Ensemble& ens) {
  double avg = 0.0;
  for (int x = 0; x < ens.size(); ++x) avg += ens.prob(x) * von_neumann_entropy(ens.state(x));
  return std::max(0.0, von_neumann_entropy(ens.average()) - avg);
}

namespace {

// Ensemble with each state factored as rho_x = L_x L_x^dagger.
struct Factored {
  std::vector<double> p;
  std::vector<Matrix> l;
  int dim = 0;

  explicit Factored(const Ensemble& ens) : dim(ens.dim()) {
    for (int x = 0; x < ens.size(); ++x) {
      if (ens.prob(x) <= 0.0) continue;
      Eigen::SelfAdjointEigenSolver<Matrix> es(ens.state(x).matrix());
      std::vector<Eigen::Index> cols;
      for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        if (es.eigenvalues()(i) > tol::kEntropyCutoff) cols.push_back(i);
      }
      Matrix f(dim, static_cast<Eigen::Index>(cols.size()));
      for (size_t c = 0; c < cols.size(); ++c) {
        f.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(cols[c]) * std::sqrt(es.eigenvalues()(cols[c]));
      }
      p.push_back(ens.prob(x));
      l.push_back(std::move(f));
    }
  }

  // Mutual information of the rank-one POVM given by the rows of w; fills
  // the Euclidean ascent direction when grad is non-null.
  double eval(const Matrix& w, Matrix* grad) const {
    const Eigen::Index k = w.rows();
    const int nx = static_cast<int>(p.size());
    RealMatrix joint(nx, k);
    std::vector<Matrix> a(nx);
    for (int x = 0; x < nx; ++x) {
      a[x] = w * l[x];
      joint.row(x) = p[x] * a[x].rowwise().squaredNorm().transpose();
    }
    const RealVector q = joint.colwise().sum().transpose();
    double mi = 0.0;
    RealMatrix g = RealMatrix::Zero(nx, k);
    for (int x = 0; x < nx; ++x) {
      for (Eigen::Index y = 0; y < k; ++y) {
        const double pxy = joint(x, y);
        if (q(y) <= 0.0) continue;
        const double ratio = pxy / (p[x] * q(y));
        if (pxy > 0.0) mi += pxy * std::log2(ratio);
        g(x, y) = p[x] * std::log2(std::max(ratio, 1e-30));
      }
    }
    if (grad != nullptr) {
      grad->setZero(k, dim);
      for (int x = 0; x < nx; ++x) grad->noalias() += g.row(x).transpose().cast<cplx>().asDiagonal() * a[x] * l[x].adjoint();
    }
    return mi;
  }
};

Matrix tangent_projection(const Matrix& w, const Matrix& g) {
  const Matrix m = w.adjoint() * g;
  return g - w * ((m + m.adjoint()) * 0.5);
}

struct StartResult {
  double value = -1.0;
  Matrix w;
  std::vector<double> history;
  int iterations = 0;
};

StartResult ascend(const Factored& prob, Matrix w, const AccInfoOptions& opts) {
  StartResult r;
  Matrix grad;
  double f = prob.eval(w, &grad);
  r.history.push_back(f);
  double t = -1.0;
  for (int it = 0; it < opts.iterations; ++it) {
    const Matrix xi = tangent_projection(w, grad);
    const double norm = xi.norm();
    if (norm < 1e-12) break;
    t = t < 0.0 ? 0.1 / norm : std::min(2.0 * t, 1e3 / norm);
    bool accepted = false;
    Matrix cand;
    double fc = f;
    while (t * norm > 1e-14) {
      cand = polar_isometry(w + t * xi);
      fc = prob.eval(cand, nullptr);
      if (fc > f) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;
    const double gain = fc - f;
    w = std::move(cand);
    f = prob.eval(w, &grad);
    r.history.push_back(f);
    r.iterations = it + 1;
    if (gain < opts.tolerance) break;
  }
  r.value = f;
  r.w = std::move(w);
  return r;
}

// Rows sqrt(lambda_y) v_y^dagger of a rank-one POVM, zero padded to k rows.
std::optional<Matrix> povm_to_rows(const Povm& povm, int k) {
  if (povm.size() > k || !povm.is_rank_one()) return std::nullopt;
  Matrix w = Matrix::Zero(k, povm.dim());
  for (int y = 0; y < povm.size(); ++y) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(povm.element(y));
    const Eigen::Index top = es.eigenvalues().size() - 1;
    const double lam = std::max(0.0, es.eigenvalues()(top));
    w.row(y) = std::sqrt(lam) * es.eigenvectors().col(top).adjoint();
  }
  return polar_isometry(w);
}

Povm rows_to_povm(const Matrix& w) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index y = 0; y < w.rows(); ++y) {
    if (w.row(y).squaredNorm() >= 1e-8) keep.push_back(y);
  }
  Matrix kept(static_cast<Eigen::Index>(keep.size()), w.cols());
  for (size_t i = 0; i < keep.size(); ++i) kept.row(static_cast<Eigen::Index>(i)) = w.row(keep[i]);
  // Restore completeness after pruning.
  kept = kept * psd_inverse_sqrt(kept.adjoint() * kept, 1e-14);
  return Povm::from_isometry_rows(kept);
}

}  // namespace

AccInfoResult acc_info_optimize(const Ensemble& ens, const AccInfoOptions& opts) {
  const int d = ens.dim();
  if (d > 64) throw CapabilityError("accessible-information optimizer supports d <= 64");
  if (opts.restarts < 0 || opts.iterations < 0) throw ValidationError("restarts and iterations must be nonnegative");
  int k = opts.num_elements <= 0 ? d * d : std::min(opts.num_elements, d * d);
  k = std::max(k, d);

  std::vector<Povm> pool;
  if (opts.basis_pool) {
    pool.push_back(Povm::standard_basis(d));
    pool.push_back(Povm::fourier_basis(d));
  }
  for (const auto& pv : opts.pool) {
    if (pv.dim() != d) throw DimensionError("pool POVM does not act on the ensemble space");
    pool.push_back(pv);
  }

  std::vector<Matrix> starts;
  for (const auto& pv : pool) {
    if (auto w = povm_to_rows(pv, k)) starts.push_back(std::move(*w));
  }
  const int warm = static_cast<int>(starts.size());
  for (int r = 0; r < opts.restarts; ++r) {
    Rng rng = Rng::stream(opts.seed, static_cast<std::uint64_t>(r));
    starts.push_back(random_isometry(k, d, rng));
  }
  if (starts.empty()) {
    Rng rng = Rng::stream(opts.seed, 0);
    starts.push_back(random_isometry(k, d, rng));
  }

  const Factored prob(ens);
  std::vector<StartResult> results(starts.size());
  parallel_for(static_cast<int>(starts.size()), [&](int i) { results[i] = ascend(prob, starts[i], opts); });

  size_t best = 0;
  int total_iters = 0;
  for (size_t i = 0; i < results.size(); ++i) {
    total_iters += results[i].iterations;
    if (results[i].value > results[best].value) best = i;
  }

  AccInfoResult out;
  out.achieving_povm = rows_to_povm(results[best].w);
  out.lower_bits = acc_info_of_measurement(ens, out.achieving_povm);
  std::ostringstream method;
  method << "rank1-stiefel-ascent(K=" << k << (static_cast<int>(best) < warm ? ",warm" : ",random") << ")";
  out.lower_method = method.str();
  for (size_t i = 0; i < pool.size(); ++i) {
    const double v = acc_info_of_measurement(ens, pool[i]);
    if (v > out.lower_bits) {
      out.lower_bits = v;
      out.achieving_povm = pool[i];
      out.lower_method = "pool-measurement";
    }
  }
  out.upper_bits = holevo_chi(ens);
  out.upper_method = "holevo-chi";
  out.restarts_used = static_cast<int>(starts.size());
  out.iterations = total_iters;
  out.history = results[best].history;
  return out;
}

double entropy_min_objective(std::span<const Matrix> key_unitaries, const Povm& povm) {
  if (key_unitaries.empty()) throw ValidationError("need at least one key unitary");
  const int m = static_cast<int>(key_unitaries.front().rows());
  if (povm.dim() != m) throw DimensionError("POVM does not act on the message space");
  if (!povm.is_rank_one()) throw ValidationError("entropy-minimization objective needs a rank-one POVM");
  const double nk = static_cast<double>(key_unitaries.size());
  double acc = 0.0;
  for (const auto& e : povm.elements()) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(e);
    const Eigen::Index top = es.eigenvalues().size() - 1;
    const double mu = es.eigenvalues()(top);
    if (mu <= 0.0) continue;
    const Vector phi = es.eigenvectors().col(top);
    for (const auto& u : key_unitaries) {
      if (u.rows() != m || u.cols() != m) throw DimensionError("key unitaries have different dimensions");
      const RealVector q = (u.adjoint() * phi).cwiseAbs2();
      acc += mu * shannon_entropy(q);
    }
  }
  return std::log2(static_cast<double>(m)) - acc / (static_cast<double>(m) * nk);
}

Povm pretty_good_measurement(const Ensemble& ens) {
  const Matrix avg = ens.average().matrix();
  const Matrix s = psd_inverse_sqrt(avg, 1e-10);
  std::vector<Matrix> el;
  el.reserve(ens.size() + 1);
  for (int x = 0; x < ens.size(); ++x) el.push_back(hermitian_part(s * (ens.prob(x) * ens.state(x).matrix()) * s));
  const Matrix rest = Matrix::Identity(ens.dim(), ens.dim()) - support_projector(avg, 1e-10);
  if (rest.trace().real() > 1e-9) el.push_back(hermitian_part(rest));
  return Povm(std::move(el));
}

double guessing_probability(const Ensemble& ens, const Povm& povm) {
  const RealMatrix joint = joint_distribution(ens, povm);
  double s = 0.0;
  for (int x = 0; x < std::min(ens.size(), povm.size()); ++x) s += joint(x, x);
  return s;
}

AdversarySuiteReport run_adversary_suite(const Ensemble& ens, const AccInfoOptions& opts,
                                         std::span<const std::pair<std::string, Povm>> extras) {
  AdversarySuiteReport rep;
  const int d = ens.dim();
  AccInfoOptions o = opts;
  auto add = [&](const std::string& name, const Povm& pv) {
    rep.outcomes.push_back({name, acc_info_of_measurement(ens, pv), "exact-mutual-information"});
    o.pool.push_back(pv);
  };
  add("standard_basis", Povm::standard_basis(d));
  add("fourier_basis", Povm::fourier_basis(d));
  add("pretty_good", pretty_good_measurement(ens));
  rep.outcomes.push_back({"heterodyne", std::nullopt, "not-applicable-finite-dimension"});
  for (const auto& [name, pv] : extras) add(name, pv);
  o.basis_pool = false;
  rep.optimized = acc_info_optimize(ens, o);
  rep.outcomes.push_back({"optimized_rank1", rep.optimized.lower_bits, rep.optimized.lower_method});
  rep.holevo_bits = rep.optimized.upper_bits;
  rep.best_bits = -1.0;
  for (const auto& oc : rep.outcomes) {
    if (oc.bits && *oc.bits > rep.best_bits) {
      rep.best_bits = *oc.bits;
      rep.best_name = oc.name;
    }
  }
  return rep;
}

}  // namespace qlock
