#include <cmath>
#include <limits>
#include <numbers>

#include "config_reader.hpp"
#include "qlock/accinfo/accinfo.hpp"
#include "qlock/bosonic/bosonic.hpp"
#include "qlock/channels/capacity.hpp"
#include "qlock/channels/config.hpp"
#include "qlock/channels/eb.hpp"
#include "qlock/channels/wiretap.hpp"
#include "qlock/cli/cli.hpp"
#include "qlock/core/linalg.hpp"
#include "qlock/core/random.hpp"
#include "qlock/locking/protocol.hpp"
#include "qlock/ppm/ppm.hpp"

namespace qlock::cli {

using nlohmann::json;

json number(double value, const std::string& method, double tolerance) {
  json j;
  j["value"] = std::isfinite(value) ? json(value) : json(nullptr);
  j["method"] = method;
  j["tolerance"] = tolerance;
  return j;
}

namespace {

struct Checks {
  json list = json::array();
  bool ok = true;

  void add(const std::string& name, bool passed, double observed) {
    list.push_back({{"name", name}, {"passed", passed}, {"observed", std::isfinite(observed) ? json(observed) : json(nullptr)}});
    ok = ok && passed;
  }
};

std::uint64_t resolve_seed(ConfigReader& r, std::optional<std::uint64_t> flag, json& provenance) {
  const std::uint64_t from_cfg = r.get<std::uint64_t>("seed", 0);
  const std::uint64_t seed = flag ? *flag : from_cfg;
  provenance = {{"value", seed},
                {"source", flag ? "flag" : (r.has("seed") ? "config" : "default")},
                {"rng", kRngAlgorithm},
                {"streams", "splitmix64(seed, stream index)"}};
  return seed;
}

AccInfoOptions acc_options(ConfigReader& r, std::uint64_t seed, int restarts, int iterations) {
  AccInfoOptions o;
  o.restarts = r.get<int>("restarts", restarts);
  o.iterations = r.get<int>("iterations", iterations);
  o.num_elements = r.get<int>("num_elements", 0);
  o.seed = seed;
  if (o.restarts < 1 || o.iterations < 1 || o.num_elements < 0) throw ValidationError("optimizer budget must be positive");
  return o;
}

json suite_json(const AdversarySuiteReport& s) {
  json out = json::array();
  for (const auto& o : s.outcomes) {
    out.push_back({{"name", o.name},
                   {"bits", o.bits ? number(*o.bits, o.method, 1e-9) : json(nullptr)},
                   {"method", o.method}});
  }
  return {{"adversaries", out},
          {"best", number(s.best_bits, "max over adversaries: " + s.best_name, 1e-9)},
          {"holevo_chi", number(s.holevo_bits, "holevo-chi", 1e-9)}};
}

json optional_number(const std::optional<double>& v, const std::string& method) {
  return v ? number(*v, method, 1e-9) : json(nullptr);
}

Ensemble random_ensemble(int dim, int size, Rng& rng) {
  std::vector<DensityOperator> st;
  for (int i = 0; i < size; ++i) st.push_back(random_pure_state(dim, rng));
  return Ensemble(random_probability(size, rng), std::move(st));
}

// ---------------------------------------------------------------- lock-sim

RunOutput lock_sim(const json& cfg, std::optional<std::uint64_t> flag) {
  ConfigReader r(cfg, "lock-sim");
  RunOutput out;
  json prov;
  const std::uint64_t seed = resolve_seed(r, flag, prov);
  const int d = r.get<int>("msg_dim", 16);
  const int keys = r.get<int>("num_keys", 4);
  const int n = r.get<int>("uses", 1);
  const std::string mode_s = r.get<std::string>("mode", "strong");
  if (d < 2) throw ValidationError("msg_dim must be >= 2");
  if (d > 64) throw CapabilityError("msg_dim above 64 is not supported by the optimizer");
  if (keys < 1) throw ValidationError("num_keys must be >= 1");
  if (n < 1) throw ValidationError("uses must be >= 1");
  if (mode_s != "strong" && mode_s != "weak") throw ValidationError("mode must be strong or weak");
  const KrausChannel ch = r.has("channel") ? channel_from_config(r.sub("channel")) : identity_channel(static_cast<int>(std::lround(std::pow(d, 1.0 / n))));
  const AccInfoOptions o = acc_options(r, derive_seed(seed, 2), 3, 150);
  r.finish();

  long in_total = 1, out_total = 1;
  for (int i = 0; i < n; ++i) {
    in_total *= ch.in_dim();
    out_total *= ch.out_dim();
  }
  if (in_total != d) throw ValidationError("channel input dimension ^ uses must equal msg_dim");
  if (out_total > kMaxDim) throw CapabilityError("channel output over all uses exceeds the dense limit");

  const LockingScheme scheme = LockingScheme::haar(d, keys, derive_seed(seed, 1));
  LockingProtocolSpec proto = make_protocol(scheme, n, ch.in_dim());
  if (ch.out_dim() != ch.in_dim()) {
    Matrix e1 = Matrix::Zero(ch.out_dim(), ch.in_dim());
    e1.topRows(ch.in_dim()) = Matrix::Identity(ch.in_dim(), ch.in_dim());
    Matrix e = e1;
    for (int i = 1; i < n; ++i) e = kron(e, e1);
    proto = with_uniform_guessing(proto, e);
  }
  const LockingMode mode = mode_s == "weak" ? LockingMode::Weak : LockingMode::Strong;
  const SecurityReport rep = evaluate_protocol(proto, ch, mode, o, &scheme);

  Checks c;
  c.add("success_probability_in_unit_interval", rep.success_prob >= -1e-12 && rep.success_prob <= 1 + 1e-12, rep.success_prob);
  c.add("adversary_below_holevo", rep.suite.best_bits <= rep.suite.holevo_bits + 1e-9, rep.suite.holevo_bits - rep.suite.best_bits);
  c.add("max_var_dist_in_range", rep.max_var_dist >= -1e-12 && rep.max_var_dist <= 2 + 1e-12, rep.max_var_dist);

  json res;
  res["label"] = "fixed-n";
  res["mode"] = mode_s;
  res["msg_dim"] = d;
  res["num_keys"] = keys;
  res["uses"] = n;
  res["key_bits"] = number(rep.key_bits, "log2|K|", 0.0);
  res["rate"] = number(rep.rate, "log2|M|/n", 0.0);
  res["success_probability"] = number(rep.success_prob, "exact-trace", 1e-10);
  res["with_key_bits"] = number(rep.with_key_bits, "decoded-mutual-information", 1e-9);
  res["without_key_bits"] = number(rep.without_key_bits, "adversary-suite-best", 1e-6);
  res["r1"] = optional_number(rep.ratios.r1, "without/with");
  res["r2"] = optional_number(rep.ratios.r2, "key_bits/(with-without)");
  res["ratios_note"] = rep.ratios.note;
  res["max_var_dist"] = number(rep.max_var_dist, "per-outcome variational distance, adversary " + rep.max_var_dist_adversary, 1e-9);
  res["fannes_audenaert_bound_bits"] = number(rep.fa_acc_bound_bits, "closed-form", 0.0);
  res["skipped_outcomes"] = rep.skipped_outcomes;
  res["adversary_suite"] = suite_json(rep.suite);
  out.report = {{"results", res}, {"checks", c.list}, {"seed", prov}};
  out.invariants_ok = c.ok;
  return out;
}

// ---------------------------------------------------------- bosonic-bounds

RunOutput bosonic_bounds(const json& cfg, std::optional<std::uint64_t> flag) {
  ConfigReader r(cfg, "bosonic-bounds");
  RunOutput out;
  json prov;
  resolve_seed(r, flag, prov);
  const double lo = r.get<double>("ns_min", 0.001);
  const double hi = r.get<double>("ns_max", 10.0);
  const int points = r.get<int>("points", 60);
  const bool log_spacing = r.get<bool>("log_spacing", true);
  const std::vector<double> etas = r.get<std::vector<double>>("etas", {1.0, 0.9, 0.7, 0.5});
  const std::vector<double> thermal = r.get<std::vector<double>>("wehrl_thermal", {0.5, 1.0, 2.0});
  r.finish();
  if (!(lo >= 0.0 && hi > lo) || points < 2) throw ValidationError("sweep needs 0 <= ns_min < ns_max and points >= 2");
  if (log_spacing && lo <= 0.0) throw ValidationError("log spacing needs ns_min > 0");
  if (points > 100000) throw CapabilityError("sweep too large");
  std::vector<double> ns(points);
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    ns[i] = log_spacing ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
  }
  const auto rows = bosonic_sweep(ns, etas);
  out.csv = sweep_csv(rows);

  Checks c;
  bool mono = true;
  double max_bound = 0.0, max_gap = 0.0, eta1_dev = 0.0;
  for (size_t i = 0; i < rows.size(); ++i) {
    if (i > 0 && rows[i].eta == rows[i - 1].eta && !(rows[i].g > rows[i - 1].g)) mono = false;
    max_bound = std::max(max_bound, rows[i].strong_bound);
    max_gap = std::max(max_gap, rows[i].weak_bound - rows[i].private_capacity);
    if (rows[i].eta == 1.0) eta1_dev = std::max(eta1_dev, std::abs(rows[i].weak_bound - rows[i].private_capacity));
  }
  c.add("g_monotone_in_ns", mono, 0.0);
  c.add("strong_bound_below_log2e", max_bound <= std::numbers::log2e + 1e-12, max_bound);
  c.add("weak_minus_private_below_1.4427", max_gap <= 1.4427, max_gap);
  c.add("eta1_weak_equals_private", eta1_dev == 0.0, eta1_dev);

  json res;
  res["rows"] = rows.size();
  res["max_strong_bound"] = number(max_bound, "closed-form sweep max", 0.0);
  res["max_weak_minus_private"] = number(max_gap, "closed-form sweep max", 0.0);
  res["g_of_1"] = number(g_func(1.0), "closed-form", 1e-12);
  res["wehrl_vacuum"] = number(wehrl_entropy(FockOperator::vacuum()), "polar Gauss-Legendre quadrature", 1e-4);
  c.add("wehrl_vacuum_log2e", std::abs(res["wehrl_vacuum"]["value"].get<double>() - std::numbers::log2e) <= 1e-4,
        res["wehrl_vacuum"]["value"].get<double>());
  json th = json::array();
  for (double n : thermal) {
    const double w = wehrl_entropy(FockOperator::thermal(n));
    th.push_back({{"mean_photon", n}, {"wehrl", number(w, "polar Gauss-Legendre quadrature", 1e-4)},
                  {"closed_form", number(std::log2(n + 1) + std::numbers::log2e, "log2(N+1)+log2 e", 0.0)}});
    c.add("wehrl_thermal_closed_form", std::abs(w - std::log2(n + 1) - std::numbers::log2e) <= 1e-4, w);
  }
  res["wehrl_thermal"] = th;
  res["label"] = "per-mode";
  out.report = {{"results", res}, {"checks", c.list}, {"seed", prov}};
  out.invariants_ok = c.ok;
  return out;
}

// ------------------------------------------------------------------ ppm-sim

RunOutput ppm_sim(const json& cfg, std::optional<std::uint64_t> flag) {
  ConfigReader r(cfg, "ppm-sim");
  RunOutput out;
  json prov;
  const std::uint64_t seed = resolve_seed(r, flag, prov);
  PpmConfig pc;
  pc.n_modes = r.get<int>("n_modes", 16);
  pc.eta = r.get<double>("eta", 0.5);
  pc.num_keys = r.get<int>("num_keys", 4);
  pc.trials = r.get<long>("trials", 100000);
  pc.adversary_suite = r.get<bool>("adversary_suite", false);
  pc.rng_seed = derive_seed(seed, 1);
  const double epsilon = r.get<double>("epsilon", 0.5);
  json coherent_cfg = r.has("coherent") ? r.sub("coherent") : json(nullptr);
  r.finish();
  pc.validate();
  if (pc.trials > 100000000) throw CapabilityError("at most 1e8 trials");

  const PpmReport rep = lossy_feedback_simulate(pc);
  Checks c;
  const double dev = std::abs(rep.throughput_bits_per_block - rep.expected_throughput);
  c.add("throughput_within_3_stderr", dev <= 3 * rep.throughput_stderr + 1e-12, dev);
  c.add("throughput_at_most_log2n", rep.throughput_bits_per_block <= std::log2(pc.n_modes) + 1e-12, rep.throughput_bits_per_block);
  c.add("resend_rate_in_unit_interval", rep.resend_rate >= 0 && rep.resend_rate <= 1, rep.resend_rate);

  json res;
  res["throughput_bits_per_block"] = number(rep.throughput_bits_per_block, "monte-carlo", rep.throughput_stderr);
  res["expected_throughput"] = number(rep.expected_throughput, "eta*log2(n)", 0.0);
  res["resend_rate"] = number(rep.resend_rate, "monte-carlo", std::sqrt(0.25 / rep.trials));
  res["decode_success_probability"] = number(rep.decode_success_probability, "exact-trace, guess on no click", 1e-10);
  res["r2_estimate"] = pc.eta > 0 ? number(ppm_r2_estimate(pc.eta, pc.n_modes, epsilon), "4log2(1/eps)/(eta log2 n)", 0.0) : json(nullptr);
  res["epsilon"] = epsilon;
  res["trials"] = rep.trials;
  res["assumption"] = "independent_block_attacks";
  res["independent_block_attacks"] = rep.independent_block_attacks;
  if (rep.suite) res["adversary_suite"] = suite_json(*rep.suite);

  if (!coherent_cfg.is_null()) {
    ConfigReader cr(coherent_cfg, "ppm-sim.coherent");
    const int n = cr.get<int>("n_modes", 8);
    const double nt = cr.get<double>("n_tot", 0.1);
    const std::vector<int> key_list = cr.get<std::vector<int>>("num_keys", {1, 2, 4, 8});
    const int seeds = cr.get<int>("seeds", 4);
    const double threshold = cr.get<double>("threshold", 0.1);
    const double log2_n_region = cr.get<double>("region_log2_n", 100.0);
    AccInfoOptions o = acc_options(cr, 0, 2, 150);
    cr.finish();
    if (seeds < 1 || nt < 0) throw ValidationError("coherent block needs seeds >= 1 and n_tot >= 0");
    json trend = json::array();
    for (int keys : key_list) {
      double s = 0.0, s2 = 0.0;
      for (int t = 0; t < seeds; ++t) {
        const std::uint64_t sd = derive_seed(seed, 1000 + 64 * keys + t);
        o.seed = sd;
        const double b = i_num_estimate(CoherentPpmScheme(n, std::sqrt(nt), keys, sd), o).value;
        s += b;
        s2 += b * b;
      }
      const double mean = s / seeds;
      const double var = seeds > 1 ? std::max(0.0, (s2 - seeds * mean * mean) / (seeds - 1)) : 0.0;
      trend.push_back({{"num_keys", keys}, {"i_num_bits", number(mean, "mean over seeds of N_tot*optimized I(MK;Y) on the one-photon sector", std::sqrt(var / seeds))},
                       {"remainder_bound", number(nt * nt * std::log2(n), "N_tot^2 log2 n", 0.0)}});
    }
    const CoherentPpmScheme probe(n, std::sqrt(nt), 1, seed);
    const auto norms = probe.sector_norms();
    c.add("sector_norms_sum_to_one", std::abs(norms[0] + norms[1] + norms[2] - 1.0) <= 1e-9, norms[0] + norms[1] + norms[2]);
    const KeyEfficiency ke = key_efficiency_region(nt, epsilon, std::exp2(log2_n_region), threshold);
    res["coherent"] = {{"i_num_trend", trend},
                       {"sector_norms", norms},
                       {"vacuum_probability", number(norms[0], "exp(-N_tot)", 0.0)},
                       {"key_efficiency_region", {{"inside", ke.inside}, {"lower", ke.lower}, {"lower_margin", ke.lower_margin}, {"upper_margin", ke.upper_margin}}}};
  }
  out.report = {{"results", res}, {"checks", c.list}, {"seed", prov}};
  out.invariants_ok = c.ok;
  return out;
}

// ----------------------------------------------------------------- eb-check

RunOutput eb_check(const json& cfg, std::optional<std::uint64_t> flag) {
  ConfigReader r(cfg, "eb-check");
  RunOutput out;
  json prov;
  const std::uint64_t seed = resolve_seed(r, flag, prov);
  const KrausChannel ch = r.has("channel") ? channel_from_config(r.sub("channel"))
                                           : channel_from_config(json{{"name", "depolarizing"}, {"d", 2}, {"p", 0.7}});
  const int ensembles = r.get<int>("ensembles", 20);
  const int size = r.get<int>("ensemble_size", 4);
  const bool search = r.get<bool>("weak_lock_search", true);
  r.finish();
  if (ensembles < 0 || size < 1) throw ValidationError("ensembles >= 0 and ensemble_size >= 1 required");

  const EbVerdict v = is_entanglement_breaking(ch);
  Checks c;
  json res;
  res["verdict"] = to_string(v.verdict);
  res["witness"] = v.witness;
  res["min_pt_eigenvalue"] = number(v.min_pt_eigenvalue, "partial transpose of the Choi matrix", 1e-9);
  res["in_dim"] = ch.in_dim();
  res["out_dim"] = ch.out_dim();
  c.add("not_eb_requires_negative_pt", v.verdict != EbKind::NotEB || v.min_pt_eigenvalue <= -1e-9, v.min_pt_eigenvalue);

  bool rank_one = true;
  try {
    rank_one_kraus_form(ch);
  } catch (const StructureError&) {
    rank_one = false;
  }
  res["rank_one_form"] = rank_one;
  if (v.verdict == EbKind::EntanglementBreaking && rank_one) {
    Rng rng = Rng::stream(seed, 3);
    double worst = -std::numeric_limits<double>::infinity();
    for (int e = 0; e < ensembles; ++e) {
      worst = std::max(worst, eb_zero_capacity_certificate(ch, random_ensemble(ch.in_dim(), size, rng)).slack);
    }
    if (ensembles > 0) {
      res["certificate_max_slack"] = number(worst, "I(X;B) - I(X;Y_env), max over random ensembles", 1e-6);
      c.add("certificate_slack_nonpositive", worst <= 1e-6, worst);
    }
  }
  if (search && ch.in_dim() <= 16 && ch.out_dim() <= 16) {
    EnsembleSearchOptions so;
    so.seed = derive_seed(seed, 4);
    const WeakLockInterval wi = weak_lock_upper_single_letter(ch, so);
    res["weak_lock_upper"] = {{"lower", number(wi.lower, "max I(X;B)-chi(X;E) over searched ensembles", 1e-6)},
                              {"upper", number(wi.upper, "max I(X;B)-acc_lower(X;E) over searched ensembles", 1e-6)},
                              {"ensembles_tried", wi.ensembles_tried},
                              {"label", "single-letter"}};
    c.add("interval_ordered", wi.lower <= wi.upper + 1e-12, wi.upper - wi.lower);
    if (v.verdict == EbKind::EntanglementBreaking && rank_one) c.add("eb_upper_zero", wi.upper <= 1e-4, wi.upper);
  }
  out.report = {{"results", res}, {"checks", c.list}, {"seed", prov}};
  out.invariants_ok = c.ok;
  return out;
}

// ------------------------------------------------------------------ wiretap

RunOutput wiretap(const json& cfg, std::optional<std::uint64_t> flag) {
  ConfigReader r(cfg, "wiretap");
  RunOutput out;
  json prov;
  const std::uint64_t seed = resolve_seed(r, flag, prov);
  const std::string n1 = r.get<std::string>("wiretap1", "weak-measurement");
  const std::string n2 = r.get<std::string>("wiretap2", n1);
  const int size = r.get<int>("ensemble_size", 3);
  const int priors = r.get<int>("priors", 200);
  r.finish();
  if (size < 1 || priors < 1) throw ValidationError("ensemble_size and priors must be positive");
  const WiretapChannel w1 = example_wiretap(n1, derive_seed(seed, 1));
  const WiretapChannel w2 = example_wiretap(n2, derive_seed(seed, 2));
  Rng rng = Rng::stream(seed, 3);
  const Ensemble e1 = random_ensemble(2, size, rng);
  const Ensemble e2 = random_ensemble(2, size, rng);
  const AdditivityReport a = degraded_product_additivity_check(w1, w2, e1, e2, priors, derive_seed(seed, 4));
  Checks c;
  const double p1 = private_information(w1, e1);
  const double chi1 = holevo_chi(e1.through(w1.to_b()));
  c.add("private_info_below_chi_b", p1 <= chi1 + 1e-12, chi1 - p1);
  c.add("additivity_slack", a.slack <= 1e-4, a.slack);
  json res;
  res["wiretap1"] = n1;
  res["wiretap2"] = n2;
  res["private_information_1"] = number(p1, "I(X;B)-I(X;E) at the sampled prior", 1e-12);
  res["p1_max"] = number(a.p1_max, "exponentiated-gradient ascent on priors", 1e-6);
  res["p2_max"] = number(a.p2_max, "exponentiated-gradient ascent on priors", 1e-6);
  res["p_joint_max"] = number(a.p_joint_max, "random priors + ascent", 1e-6);
  res["slack"] = number(a.slack, "P_joint - (P1_max + P2_max)", 1e-4);
  res["priors_tried"] = a.priors_tried;
  res["label"] = "single-letter, product pure-state encodings";
  out.report = {{"results", res}, {"checks", c.list}, {"seed", prov}};
  out.invariants_ok = c.ok;
  return out;
}

// ------------------------------------------------------------------ accinfo

RunOutput accinfo(const json& cfg, std::optional<std::uint64_t> flag) {
  ConfigReader r(cfg, "accinfo");
  RunOutput out;
  json prov;
  const std::uint64_t seed = resolve_seed(r, flag, prov);
  const AccInfoOptions o = acc_options(r, derive_seed(seed, 2), 4, 200);
  std::vector<std::vector<double>> states = r.get<std::vector<std::vector<double>>>("states", {});
  std::vector<double> probs = r.get<std::vector<double>>("probs", {});
  const int rdim = r.get<int>("random_dim", 0);
  const int rsize = r.get<int>("random_size", 0);
  r.finish();
  std::optional<Ensemble> ens;
  if (!states.empty()) {
    if (rdim || rsize) throw ValidationError("give either states or random_dim/random_size");
    if (states.front().size() % 2 != 0) throw ValidationError("state vectors are interleaved (re, im) pairs");
    const int d = static_cast<int>(states.front().size() / 2);
    if (d > 64) throw CapabilityError("dimension above 64");
    std::vector<Vector> vs;
    for (const auto& s : states) {
      if (static_cast<int>(s.size()) != 2 * d) throw ValidationError("state vectors differ in length");
      vs.push_back(deinterleave(s, d, 1).col(0));
    }
    if (probs.empty()) probs.assign(vs.size(), 1.0 / vs.size());
    if (probs.size() != vs.size()) throw ValidationError("one probability per state required");
    ens = Ensemble::from_pure(probs, vs);
  } else {
    const int d = rdim ? rdim : 2;
    const int n = rsize ? rsize : 2;
    if (d < 1 || n < 1) throw ValidationError("random_dim and random_size must be positive");
    if (d > 64) throw CapabilityError("dimension above 64");
    Rng rng = Rng::stream(seed, 1);
    ens = random_ensemble(d, n, rng);
  }
  const AccInfoResult a = acc_info_optimize(*ens, o);
  Checks c;
  c.add("lower_below_holevo", a.lower_bits <= a.upper_bits + 1e-9, a.upper_bits - a.lower_bits);
  json res;
  res["lower_bits"] = number(a.lower_bits, a.lower_method, 1e-6);
  res["upper_bits"] = number(a.upper_bits, a.upper_method, 1e-9);
  res["povm_elements"] = a.achieving_povm.size();
  res["restarts_used"] = a.restarts_used;
  res["iterations"] = a.iterations;
  res["dim"] = ens->dim();
  res["ensemble_size"] = ens->size();
  out.report = {{"results", res}, {"checks", c.list}, {"seed", prov}};
  out.invariants_ok = c.ok;
  return out;
}

}  // namespace

std::vector<std::string> subcommands() { return {"lock-sim", "bosonic-bounds", "ppm-sim", "eb-check", "wiretap", "accinfo"}; }

RunOutput run_command(const std::string& command, const json& config, std::optional<std::uint64_t> seed_flag) {
  RunOutput o;
  if (command == "lock-sim") {
    o = lock_sim(config, seed_flag);
  } else if (command == "bosonic-bounds") {
    o = bosonic_bounds(config, seed_flag);
  } else if (command == "ppm-sim") {
    o = ppm_sim(config, seed_flag);
  } else if (command == "eb-check") {
    o = eb_check(config, seed_flag);
  } else if (command == "wiretap") {
    o = wiretap(config, seed_flag);
  } else if (command == "accinfo") {
    o = accinfo(config, seed_flag);
  } else {
    throw ValidationError("unknown subcommand: " + command);
  }
  o.report["command"] = command;
  o.report["config"] = config;
  o.report["invariants_ok"] = o.invariants_ok;
  return o;
}

}  // namespace qlock::cli
