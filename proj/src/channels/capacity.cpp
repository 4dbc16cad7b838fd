#include "qlock/channels/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qlock/channels/eb.hpp"
#include "qlock/core/entropy.hpp"
#include "qlock/core/linalg.hpp"
#include "qlock/core/parallel.hpp"
#include "qlock/core/random.hpp"

namespace qlock {

namespace {

Matrix log2_psd(const Matrix& m) {
  return hermitian_function(m, [](double x) { return std::log2(std::max(x, 1e-300)); });
}

double coherent_info(const KrausChannel& ch, const KrausChannel& comp, const Matrix& rho) {
  return spectral_entropy(hermitian_eigenvalues(ch.apply(rho)).cwiseMax(0.0)) -
         spectral_entropy(hermitian_eigenvalues(comp.apply(rho)).cwiseMax(0.0));
}

Matrix normalized(const Matrix& g) {
  Matrix r = g * g.adjoint();
  return r / r.trace().real();
}

}  // namespace

CoherentInfoResult max_coherent_information(const KrausChannel& ch, int restarts, int iterations,
                                            std::uint64_t seed) {
  const int d = ch.in_dim();
  const KrausChannel comp = complementary_channel(ch);
  std::vector<Matrix> starts = {Matrix::Identity(d, d) / std::sqrt(static_cast<double>(d))};
  for (int r = 0; r < restarts; ++r) {
    Rng rng = Rng::stream(seed, 1000 + r);
    Matrix g(d, d);
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i) g(i, j) = rng.complex_normal();
    starts.push_back(g);
  }
  std::vector<std::pair<double, Matrix>> results(starts.size());
  parallel_for(static_cast<int>(starts.size()), [&](int s) {
    Matrix g = starts[s] / std::sqrt((starts[s] * starts[s].adjoint()).trace().real());
    Matrix rho = normalized(g);
    double f = coherent_info(ch, comp, rho);
    double step = 0.1;
    for (int it = 0; it < iterations; ++it) {
      // d f / d rho = -N^dagger(log N(rho)) + N^c dagger(log N^c(rho)), up to
      // trace terms removed by the normalization.
      const Matrix grad_rho = -ch.adjoint_apply(log2_psd(ch.apply(rho))) + comp.adjoint_apply(log2_psd(comp.apply(rho)));
      Matrix dir = grad_rho * g;
      dir -= (g.adjoint() * dir).trace().real() * g;  // stay on the unit sphere tangent
      const double nrm = dir.norm();
      if (nrm < 1e-12) break;
      bool moved = false;
      step = std::min(step * 2.0, 1.0);
      while (step > 1e-10) {
        Matrix cand = g + (step / nrm) * dir;
        cand /= std::sqrt((cand * cand.adjoint()).trace().real());
        const Matrix rc = normalized(cand);
        const double fc = coherent_info(ch, comp, rc);
        if (fc > f) {
          const double gain = fc - f;
          g = cand;
          rho = rc;
          f = fc;
          moved = true;
          if (gain < 1e-13) it = iterations;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
    results[s] = {f, rho};
  });
  size_t best = 0;
  for (size_t i = 1; i < results.size(); ++i) {
    if (results[i].first > results[best].first) best = i;
  }
  return {results[best].first, DensityOperator::from_matrix(hermitian_part(results[best].second))};
}

namespace {

// Pure-state decompositions of rho: sqrt(rho) w_j for the columns w_j of an
// isometry's adjoint.
Ensemble decomposition(const Matrix& sqrt_rho, const Matrix& w_rows) {
  std::vector<double> p;
  std::vector<DensityOperator> st;
  for (Eigen::Index j = 0; j < w_rows.rows(); ++j) {
    const Vector v = sqrt_rho * w_rows.row(j).adjoint();
    const double n2 = v.squaredNorm();
    if (n2 <= 1e-14) continue;
    p.push_back(n2);
    st.push_back(DensityOperator::pure(v));
  }
  double total = 0.0;
  for (double x : p) total += x;
  for (double& x : p) x /= total;
  return Ensemble(std::move(p), std::move(st));
}

Ensemble eigen_ensemble(const DensityOperator& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
  std::vector<double> p;
  std::vector<DensityOperator> st;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()(i) <= 1e-14) continue;
    p.push_back(es.eigenvalues()(i));
    st.push_back(DensityOperator::pure(es.eigenvectors().col(i)));
  }
  double total = 0.0;
  for (double x : p) total += x;
  for (double& x : p) x /= total;
  return Ensemble(std::move(p), std::move(st));
}

Ensemble basis_ensemble(const Matrix& u) {
  std::vector<DensityOperator> st;
  for (Eigen::Index i = 0; i < u.cols(); ++i) st.push_back(DensityOperator::pure(u.col(i)));
  return Ensemble::uniform(std::move(st));
}

std::vector<Ensemble> candidate_ensembles(const KrausChannel& ch, const EnsembleSearchOptions& opts) {
  const int d = ch.in_dim();
  std::vector<Ensemble> out;
  out.push_back(Ensemble::uniform({DensityOperator::basis_state(d, 0)}));
  out.push_back(basis_ensemble(Matrix::Identity(d, d)));
  out.push_back(basis_ensemble(fourier_matrix(d)));
  std::vector<DensityOperator> averages = {DensityOperator::maximally_mixed(d)};
  if (opts.restarts > 0) {
    averages.push_back(max_coherent_information(ch, opts.restarts, opts.iterations, opts.seed).input);
  }
  Rng rng = Rng::stream(opts.seed, 7);
  for (const auto& rho : averages) {
    out.push_back(eigen_ensemble(rho));
    const Matrix s = psd_sqrt(rho.matrix());
    for (int j = 0; j < opts.decompositions; ++j) {
      const int k = d + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(d * d - d + 1)));
      out.push_back(decomposition(s, random_isometry(k, d, rng)));
    }
  }
  for (int j = 0; j < opts.random_ensembles; ++j) {
    const int k = 2 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(d * d - 1)));
    std::vector<DensityOperator> st;
    for (int i = 0; i < k; ++i) st.push_back(random_pure_state(d, rng));
    out.emplace_back(random_probability(k, rng), std::move(st));
  }
  if (opts.mixed_states) {
    for (int j = 0; j < opts.random_ensembles; ++j) {
      const int k = 2 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(d * d - 1)));
      std::vector<DensityOperator> st;
      for (int i = 0; i < k; ++i) st.push_back(random_density(d, rng));
      out.emplace_back(random_probability(k, rng), std::move(st));
    }
  }
  return out;
}

}  // namespace

WeakLockInterval weak_lock_upper_single_letter(const KrausChannel& ch_in, const EnsembleSearchOptions& opts) {
  if (opts.restarts <= 0 && opts.decompositions <= 0 && opts.random_ensembles <= 0) {
    throw ValidationError("ensemble search budget is zero");
  }
  if (ch_in.in_dim() > 16 || ch_in.out_dim() > 16) throw CapabilityError("single-letter search supports dims <= 16");
  KrausChannel ch = ch_in;
  if (!has_classical_environment(ch_in)) {
    try {
      ch = rank_one_kraus_form(ch_in);
    } catch (const StructureError&) {
    }
  }
  const KrausChannel comp = complementary_channel(ch);
  const std::vector<Ensemble> cands = candidate_ensembles(ch, opts);
  std::vector<std::pair<double, double>> vals(cands.size());
  parallel_for(static_cast<int>(cands.size()), [&](int i) {
    const Ensemble eb = cands[i].through(ch);
    const Ensemble ee = cands[i].through(comp);
    const double xb = holevo_chi(eb);
    AccInfoOptions ao = opts.acc;
    ao.seed = derive_seed(opts.seed, 5000 + i);
    const AccInfoResult acc = acc_info_optimize(ee, ao);
    vals[i] = {xb - acc.upper_bits, xb - acc.lower_bits};
  });
  WeakLockInterval r;
  r.lower = -1e300;
  r.upper = -1e300;
  for (const auto& [lo, hi] : vals) {
    r.lower = std::max(r.lower, lo);
    r.upper = std::max(r.upper, hi);
  }
  r.upper = std::max(r.upper, r.lower);
  r.ensembles_tried = static_cast<int>(cands.size());
  return r;
}

bool has_classical_environment(const KrausChannel& ch, double tol) {
  const KrausChannel comp = complementary_channel(ch);
  for (int i = 0; i < ch.in_dim(); ++i) {
    for (int j = 0; j < ch.in_dim(); ++j) {
      Matrix e = comp.apply(unit_matrix(ch.in_dim(), i, j));
      e.diagonal().setZero();
      if (e.size() > 0 && e.cwiseAbs().maxCoeff() > tol) return false;
    }
  }
  return true;
}

double hadamard_weak_capacity(const KrausChannel& ch, const EnsembleSearchOptions& opts) {
  if (!has_classical_environment(ch)) throw StructureError("environment output is not diagonal; not a Hadamard channel");
  const KrausChannel comp = complementary_channel(ch);
  double best = 0.0;
  for (const auto& e : candidate_ensembles(ch, opts)) {
    best = std::max(best, holevo_chi(e.through(ch)) - holevo_chi(e.through(comp)));
  }
  return best;
}

double discord_gap(const KrausChannel& ch, const Ensemble& ens, const AccInfoOptions& opts) {
  const Ensemble ee = ens.through(complementary_channel(ch));
  const AccInfoResult r = acc_info_optimize(ee, opts);
  return holevo_chi(ee) - r.lower_bits;
}

}  // namespace qlock
