#include <cmath>
#include <numbers>

#include "qlock/accinfo/accinfo.hpp"
#include "qlock/bosonic/bosonic.hpp"
#include "qlock/channels/eb.hpp"
#include "qlock/channels/wiretap.hpp"
#include "qlock/channels/zoo.hpp"
#include "qlock/cli/cli.hpp"
#include "qlock/core/random.hpp"
#include "qlock/locking/protocol.hpp"
#include "qlock/ppm/ppm.hpp"

namespace qlock::cli {

using nlohmann::json;

namespace {

struct Suite {
  json list = json::array();
  bool ok = true;

  void add(const std::string& name, bool passed, double observed) {
    list.push_back({{"name", name}, {"passed", passed}, {"observed", std::isfinite(observed) ? json(observed) : json(nullptr)}});
    ok = ok && passed;
  }
};

void lock_sim_checks(Suite& s, std::uint64_t seed) {
  const LockingScheme scheme = LockingScheme::haar(8, 4, derive_seed(seed, 1));
  const LockingProtocolSpec proto = make_protocol(scheme, 1, 8);
  const double p = decode_success_probability(proto, identity_channel(8));
  s.add("noiseless_decode_is_exact", std::abs(p - 1.0) <= 1e-10, p);
  const double noisy = decode_success_probability(proto, depolarizing(8, 0.5));
  s.add("noise_lowers_success", noisy <= p + 1e-12, noisy);

  Rng rng = Rng::stream(seed, 2);
  JointMYK j{4, 3, 4, {}};
  for (int i = 0; i < 48; ++i) j.p.push_back(rng.exponential());
  double z = 0.0;
  for (double v : j.p) z += v;
  for (double& v : j.p) v /= z;
  const ClassicalInequalityResult ci = classical_inequality_check(j);
  s.add("classical_key_gain_below_key_bits", ci.slack >= -1e-12, ci.slack);

  const Ensemble without = cq_state_without_key(scheme);
  AccInfoOptions o;
  o.restarts = 2;
  o.iterations = 100;
  o.seed = derive_seed(seed, 3);
  const AccInfoResult a = acc_info_optimize(without, o);
  s.add("acc_info_below_holevo", a.lower_bits <= a.upper_bits + 1e-9, a.upper_bits - a.lower_bits);
}

void bosonic_checks(Suite& s) {
  s.add("g_zero", g_func(0.0) == 0.0, g_func(0.0));
  s.add("g_one_is_two", std::abs(g_func(1.0) - 2.0) <= 1e-12, g_func(1.0));
  double worst = 0.0;
  for (double ns : {1e-3, 0.1, 1.0, 10.0, 1e3}) worst = std::max(worst, strong_lock_bound_cs(ns));
  s.add("strong_bound_below_log2e", worst <= std::numbers::log2e, worst);
  const double eq = std::abs(weak_lock_bound_pure_loss(1.0, 2.0) - pure_loss_private_capacity(1.0, 2.0));
  s.add("eta1_weak_equals_private", eq == 0.0, eq);
  const double w = wehrl_entropy(FockOperator::vacuum());
  s.add("vacuum_wehrl_log2e", std::abs(w - std::numbers::log2e) <= 1e-4, w);
}

void ppm_checks(Suite& s, std::uint64_t seed) {
  PpmConfig c;
  c.n_modes = 8;
  c.eta = 1.0;
  c.num_keys = 2;
  c.trials = 2000;
  c.rng_seed = derive_seed(seed, 1);
  const PpmReport r = lossy_feedback_simulate(c);
  s.add("eta1_throughput_is_log2n", std::abs(r.throughput_bits_per_block - 3.0) <= 1e-12, r.throughput_bits_per_block);
  s.add("eta1_no_resends", r.resend_rate == 0.0, r.resend_rate);
  const double r2 = ppm_r2_estimate(0.5, 16.0, 0.5);
  s.add("r2_closed_form", std::abs(r2 - 2.0) <= 1e-12, r2);
  const CoherentPpmScheme cs(8, std::sqrt(0.2), 2, derive_seed(seed, 2));
  const auto n = cs.sector_norms();
  s.add("sector_norms_sum_to_one", std::abs(n[0] + n[1] + n[2] - 1.0) <= 1e-12, n[0] + n[1] + n[2]);
  s.add("vacuum_weight", std::abs(n[0] - std::exp(-0.2)) <= 1e-12, n[0]);
  const KeyEfficiency lo = key_efficiency_region(0.05, 0.5, std::exp2(100.0));
  const KeyEfficiency hi = key_efficiency_region(0.05, 0.5, std::exp2(200.0));
  s.add("region_grows_with_n", hi.lower_margin >= lo.lower_margin, hi.lower_margin - lo.lower_margin);
}

void eb_checks(Suite& s, std::uint64_t seed) {
  const EbVerdict at = is_entanglement_breaking(depolarizing(2, 2.0 / 3.0));
  s.add("depolarizing_boundary_is_eb", at.verdict == EbKind::EntanglementBreaking, at.min_pt_eigenvalue);
  const EbVerdict below = is_entanglement_breaking(depolarizing(2, 0.6));
  s.add("depolarizing_below_boundary_not_eb", below.verdict == EbKind::NotEB, below.min_pt_eigenvalue);
  Rng rng = Rng::stream(seed, 1);
  const KrausChannel mp = random_measure_prepare(3, 3, 4, rng);
  const EbVerdict mpv = is_entanglement_breaking(mp);
  s.add("measure_prepare_is_eb", mpv.verdict == EbKind::EntanglementBreaking, mpv.min_pt_eigenvalue);
  std::vector<DensityOperator> st;
  for (int i = 0; i < 4; ++i) st.push_back(random_pure_state(2, rng));
  const Ensemble e(random_probability(4, rng), st);
  const EbCertificate cert = eb_zero_capacity_certificate(qubit_depolarizing_eb_form(0.7), e);
  s.add("eb_certificate_slack_nonpositive", cert.slack <= 1e-12, cert.slack);
}

void wiretap_checks(Suite& s, std::uint64_t seed) {
  Rng rng = Rng::stream(seed, 1);
  std::vector<Vector> vs;
  for (int i = 0; i < 3; ++i) vs.push_back(random_pure_vector(2, rng));
  const Ensemble e = Ensemble::from_pure(random_probability(3, rng), vs);
  for (const auto& name : example_wiretap_names()) {
    const WiretapChannel w = example_wiretap(name, derive_seed(seed, 2));
    s.add("degraded_" + name, w.is_constructively_degraded(), 0.0);
    const double p = private_information(w, e);
    const double chi = holevo_chi(e.through(w.to_b()));
    s.add("private_below_chi_" + name, p <= chi + 1e-12, chi - p);
  }
  const WiretapChannel c = example_wiretap("constant-e", derive_seed(seed, 3));
  const AdditivityReport a = degraded_product_additivity_check(c, c, e, e, 50, derive_seed(seed, 4));
  s.add("constant_e_additive", a.slack <= 1e-4, a.slack);
}

void accinfo_checks(Suite& s, std::uint64_t seed) {
  // Two equiprobable pure qubit states with overlap cos(t): the optimum is
  // 1 - h2((1 - sin t)/2).
  const double t = 0.7;
  Vector a(2), b(2);
  a << 1.0, 0.0;
  b << std::cos(t), std::sin(t);
  const std::vector<Vector> vs{a, b};
  const Ensemble e = Ensemble::from_pure({0.5, 0.5}, vs);
  AccInfoOptions o;
  o.restarts = 3;
  o.iterations = 200;
  o.seed = seed;
  const AccInfoResult r = acc_info_optimize(e, o);
  const double q = (1.0 - std::sin(t)) / 2.0;
  const double closed = 1.0 + q * std::log2(q) + (1 - q) * std::log2(1 - q);
  s.add("two_state_closed_form", std::abs(r.lower_bits - closed) <= 1e-6, r.lower_bits - closed);
  s.add("acc_below_holevo", r.lower_bits <= r.upper_bits + 1e-9, r.upper_bits - r.lower_bits);
}

}  // namespace

RunOutput run_checks(const std::string& command, std::uint64_t seed) {
  Suite s;
  if (command == "lock-sim") {
    lock_sim_checks(s, seed);
  } else if (command == "bosonic-bounds") {
    bosonic_checks(s);
  } else if (command == "ppm-sim") {
    ppm_checks(s, seed);
  } else if (command == "eb-check") {
    eb_checks(s, seed);
  } else if (command == "wiretap") {
    wiretap_checks(s, seed);
  } else if (command == "accinfo") {
    accinfo_checks(s, seed);
  } else {
    throw ValidationError("unknown subcommand: " + command);
  }
  RunOutput out;
  out.invariants_ok = s.ok;
  out.report = {{"command", command},
                {"mode", "check"},
                {"checks", s.list},
                {"invariants_ok", s.ok},
                {"seed", {{"value", seed}, {"rng", kRngAlgorithm}}}};
  return out;
}

}  // namespace qlock::cli
