#include "qlock/ppm/ppm.hpp"

#include <algorithm>
#include <cmath>

#include "qlock/core/entropy.hpp"
#include "qlock/core/linalg.hpp"
#include "qlock/core/parallel.hpp"
#include "qlock/core/random.hpp"
#include "qlock/locking/protocol.hpp"

namespace qlock {

void PpmConfig::validate() const {
  if (n_modes < 2) throw ValidationError("PPM needs at least two modes");
  if (n_modes > 64) throw CapabilityError("PPM supports at most 64 modes");
  if (!(eta >= 0.0 && eta <= 1.0)) throw ValidationError("transmissivity must lie in [0, 1]");
  if (num_keys < 1) throw ValidationError("need at least one key");
  if (trials < 1) throw ValidationError("need at least one trial");
}

LockingScheme single_photon_scheme(int n_modes, int num_keys, std::uint64_t seed) {
  if (n_modes < 2) throw ValidationError("PPM needs at least two modes");
  if (n_modes > 64) throw CapabilityError("single-photon PPM supports at most 64 modes");
  return LockingScheme::haar(n_modes, num_keys, seed);
}

KrausChannel single_photon_loss(int n_modes, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw ValidationError("transmissivity must lie in [0, 1]");
  std::vector<Matrix> ops;
  Matrix keep = Matrix::Zero(n_modes + 1, n_modes);
  keep.bottomRows(n_modes) = std::sqrt(eta) * Matrix::Identity(n_modes, n_modes);
  ops.push_back(keep);
  if (eta < 1.0) {
    for (int i = 0; i < n_modes; ++i) {
      Matrix lose = Matrix::Zero(n_modes + 1, n_modes);
      lose(0, i) = std::sqrt(1.0 - eta);
      ops.push_back(lose);
    }
  }
  return KrausChannel(std::move(ops));
}

PpmReport lossy_feedback_simulate(const PpmConfig& cfg) {
  cfg.validate();
  const int n = cfg.n_modes;
  const LockingScheme scheme = single_photon_scheme(n, cfg.num_keys, derive_seed(cfg.rng_seed, 1));
  // Receiver's outcome distribution per (m, k): index 0 no click, 1+m' click
  // on mode m' after undoing U_k.
  std::vector<std::vector<double>> cdf(static_cast<size_t>(n) * cfg.num_keys);
  for (int m = 0; m < n; ++m) {
    for (int k = 0; k < cfg.num_keys; ++k) {
      const Vector v = scheme.key(k).adjoint() * scheme.encoded_vector(m, k);
      std::vector<double> c(n + 1);
      double acc = 1.0 - cfg.eta;
      c[0] = acc;
      for (int j = 0; j < n; ++j) {
        acc += cfg.eta * std::norm(v(j));
        c[j + 1] = acc;
      }
      cdf[static_cast<size_t>(m) * cfg.num_keys + k] = std::move(c);
    }
  }
  constexpr long kChunk = 8192;
  const int chunks = static_cast<int>((cfg.trials + kChunk - 1) / kChunk);
  std::vector<long> clicks(chunks, 0), correct(chunks, 0);
  parallel_for(chunks, [&](int c) {
    Rng rng = Rng::stream(cfg.rng_seed, 100 + c);
    const long lo = c * kChunk;
    const long hi = std::min(cfg.trials, lo + kChunk);
    for (long t = lo; t < hi; ++t) {
      const int m = static_cast<int>(rng.uniform_index(n));
      const int k = static_cast<int>(rng.uniform_index(cfg.num_keys));
      const auto& cd = cdf[static_cast<size_t>(m) * cfg.num_keys + k];
      const double u = rng.uniform01() * cd.back();
      const int out = static_cast<int>(std::upper_bound(cd.begin(), cd.end(), u) - cd.begin());
      if (out == 0) continue;  // no click: resend
      ++clicks[c];
      if (std::min(out, n) - 1 == m) ++correct[c];
    }
  });
  long total_clicks = 0, total_correct = 0;
  for (int c = 0; c < chunks; ++c) {
    total_clicks += clicks[c];
    total_correct += correct[c];
  }
  const double log_n = std::log2(static_cast<double>(n));
  const double p = static_cast<double>(total_correct) / cfg.trials;
  PpmReport r;
  r.trials = cfg.trials;
  r.throughput_bits_per_block = p * log_n;
  r.throughput_stderr = log_n * std::sqrt(p * (1.0 - p) / cfg.trials);
  r.resend_rate = 1.0 - static_cast<double>(total_clicks) / cfg.trials;
  r.expected_throughput = cfg.eta * log_n;
  if (cfg.eta > 0.0) r.r2_estimate = ppm_r2_estimate(cfg.eta, n, 0.5);

  const LockingProtocolSpec proto = make_protocol(scheme, 1, n);
  Matrix embed = Matrix::Zero(n + 1, n);
  embed.bottomRows(n) = Matrix::Identity(n, n);
  const KrausChannel loss = single_photon_loss(n, cfg.eta);
  r.decode_success_probability = decode_success_probability(with_uniform_guessing(proto, embed), loss);
  if (cfg.adversary_suite) {
    if (n > 16 || cfg.num_keys > 16) throw CapabilityError("adversary suite limited to n, |K| <= 16");
    const Ensemble eve = eve_ensemble(proto, complementary_channel(loss));
    AccInfoOptions o;
    o.restarts = 2;
    o.iterations = 100;
    o.seed = derive_seed(cfg.rng_seed, 2);
    r.suite = run_adversary_suite(eve, o, {});
  }
  return r;
}

double ppm_r2_estimate(double eta, double n, double epsilon) {
  if (!(eta > 0.0 && eta <= 1.0)) throw ValidationError("r2 needs 0 < eta <= 1");
  if (!(n >= 2.0)) throw ValidationError("r2 needs n >= 2");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ValidationError("r2 needs 0 < eps < 1");
  return 4.0 * std::log2(1.0 / epsilon) / (eta * std::log2(n));
}

CoherentPpmScheme::CoherentPpmScheme(int n_modes, cplx alpha, int num_keys, std::uint64_t seed)
    : keys_([&] {
        if (n_modes > 32) throw CapabilityError("coherent PPM supports at most 32 modes");
        if (std::norm(alpha) > 0.5) throw ValidationError("N_tot must be <= 0.5 for the sector truncation");
        return single_photon_scheme(n_modes, num_keys, seed);
      }()),
      alpha_(alpha) {}

Vector CoherentPpmScheme::encoded_vector(int m, int k) const {
  const int n = n_modes();
  const double nt = n_tot();
  const double a = std::exp(-nt / 2.0);
  Vector v = Vector::Zero(n + 2);
  v(0) = a;
  v.segment(1, n) = a * alpha_ * keys_.encoded_vector(m, k);
  v(n + 1) = std::sqrt(std::max(0.0, 1.0 - std::exp(-nt) * (1.0 + nt)));
  return v;
}

std::vector<double> CoherentPpmScheme::sector_norms() const {
  const double nt = n_tot();
  const double vac = std::exp(-nt);
  const double one = std::exp(-nt) * nt;
  return {vac, one, std::max(0.0, 1.0 - vac - one)};
}

double CoherentPpmScheme::truncation_error() const { return sector_norms()[2]; }

Ensemble CoherentPpmScheme::labelled_ensemble() const {
  std::vector<Vector> vs;
  for (int m = 0; m < n_modes(); ++m) {
    for (int k = 0; k < num_keys(); ++k) vs.push_back(encoded_vector(m, k));
  }
  return Ensemble::from_pure(std::vector<double>(vs.size(), 1.0 / vs.size()), vs);
}

Ensemble CoherentPpmScheme::message_ensemble() const {
  std::vector<DensityOperator> st;
  for (int m = 0; m < n_modes(); ++m) {
    Matrix r = Matrix::Zero(dim(), dim());
    for (int k = 0; k < num_keys(); ++k) {
      const Vector v = encoded_vector(m, k);
      r += v * v.adjoint();
    }
    st.push_back(DensityOperator::from_matrix(r / static_cast<double>(num_keys())));
  }
  return Ensemble::uniform(std::move(st));
}

Povm single_photon_sector_povm(const LockingScheme& scheme, const AccInfoOptions& opts) {
  return acc_info_optimize(cq_state_without_key(scheme), opts).achieving_povm;
}

Povm photon_number_adversary(const CoherentPpmScheme& scheme, const AccInfoOptions& opts) {
  const int n = scheme.n_modes();
  const int d = scheme.dim();
  const Povm inner = single_photon_sector_povm(scheme.mode_keys(), opts);
  std::vector<Matrix> el;
  el.push_back(unit_matrix(d, 0, 0));
  for (const auto& e : inner.elements()) {
    Matrix big = Matrix::Zero(d, d);
    big.block(1, 1, n, n) = e;
    el.push_back(big);
  }
  el.push_back(unit_matrix(d, n + 1, n + 1));
  return Povm(std::move(el));
}

INumEstimate i_num_estimate(const CoherentPpmScheme& scheme, const AccInfoOptions& opts) {
  INumEstimate r;
  const int n = scheme.n_modes();
  r.remainder_bound = scheme.n_tot() * scheme.n_tot() * std::log2(static_cast<double>(n));
  if (scheme.n_tot() == 0.0) {
    r.bracket_method = "zero-photons";
    return r;
  }
  const AccInfoResult acc = acc_info_optimize(cq_state_with_key(scheme.mode_keys()).labelled_ensemble(), opts);
  r.bracket = acc.lower_bits;
  r.bracket_method = acc.lower_method;
  r.value = scheme.n_tot() * r.bracket;
  return r;
}

KeyEfficiency key_efficiency_region(double n_tot, double epsilon, double n, double threshold) {
  if (!(n_tot >= 0.0) || !(epsilon > 0.0 && epsilon <= 1.0) || !(n > 1.0) || !(threshold > 0.0)) {
    throw ValidationError("key efficiency region needs N_tot >= 0, 0 < eps <= 1, n > 1, threshold > 0");
  }
  KeyEfficiency k;
  k.lower = 4.0 * std::log2(1.0 / epsilon) / std::log2(n);
  k.lower_margin = n_tot - k.lower;
  k.upper_margin = threshold - n_tot;
  k.inside = k.lower_margin > 0.0 && k.upper_margin >= 0.0;
  return k;
}

}  // namespace qlock
