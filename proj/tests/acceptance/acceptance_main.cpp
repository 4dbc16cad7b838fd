// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles/oracles.hpp"
#include "qlock/accinfo/accinfo.hpp"
#include "qlock/bosonic/bosonic.hpp"
#include "qlock/channels/capacity.hpp"
#include "qlock/channels/eb.hpp"
#include "qlock/channels/wiretap.hpp"
#include "qlock/channels/zoo.hpp"
#include "qlock/cli/cli.hpp"
#include "qlock/core/random.hpp"
#include "qlock/locking/protocol.hpp"
#include "qlock/ppm/ppm.hpp"

using namespace qlock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Stats {
  double mean = 0.0;
  double se = 0.0;
};

Stats stats(const std::vector<double>& v) {
  Stats s;
  for (double x : v) s.mean += x;
  s.mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - s.mean) * (x - s.mean);
  s.se = v.size() > 1 ? std::sqrt(ss / (v.size() - 1) / v.size()) : 0.0;
  return s;
}

Ensemble random_pure_ensemble(int dim, int size, Rng& rng) {
  std::vector<DensityOperator> st;
  for (int i = 0; i < size; ++i) st.push_back(random_pure_state(dim, rng));
  return Ensemble(random_probability(size, rng), std::move(st));
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(4);
  os << x;
  return os.str();
}

// 1
Outcome noiseless_decode() {
  Outcome o;
  double worst_p = 0.0, worst_i = 0.0;
  for (int d : {4, 16, 64}) {
    for (int k : {1, 4}) {
      const LockingScheme s = LockingScheme::haar(d, k, 100 + d + k);
      const LockingProtocolSpec proto = make_protocol(s, 1, d);
      worst_p = std::max(worst_p, std::abs(decode_success_probability(proto, identity_channel(d)) - 1.0));
      worst_i = std::max(worst_i, std::abs(mutual_info_m_kq(cq_state_with_key(s)) - std::log2(d)));
    }
  }
  o.pass = worst_p <= 1e-10 && worst_i <= 1e-9;
  o.detail = "max |p-1|=" + fmt(worst_p) + " max |I-log2 d|=" + fmt(worst_i);
  return o;
}

// 2
Outcome accinfo_oracle() {
  Outcome o;
  double worst = 0.0, excess = -1.0;
  AccInfoOptions opts;
  opts.restarts = 4;
  opts.iterations = 300;
  for (int i = 0; i < 20; ++i) {
    const double t = (i + 1) * (std::numbers::pi / 2) / 20;
    const double p0 = i % 2 == 0 ? 0.5 : 0.3;
    const oracle::c64 a[2] = {1.0, 0.0};
    const oracle::c64 b[2] = {std::cos(t), std::sin(t)};
    Vector va(2), vb(2);
    va << a[0], a[1];
    vb << b[0], b[1];
    const std::vector<Vector> vs{va, vb};
    const Ensemble e = Ensemble::from_pure({p0, 1 - p0}, vs);
    opts.seed = 700 + i;
    const AccInfoResult r = acc_info_optimize(e, opts);
    worst = std::max(worst, std::abs(r.lower_bits - oracle::two_state_projective_oracle(a, b, p0)));
    excess = std::max(excess, r.lower_bits - holevo_chi(e));
  }
  o.pass = worst <= 1e-4 && excess <= 1e-12;
  o.detail = "max |lower-oracle|=" + fmt(worst) + " max(lower-chi)=" + fmt(excess);
  return o;
}

// 3
Outcome locking_trend() {
  Outcome o;
  const int d = 32;
  AccInfoOptions opts;
  opts.restarts = 3;
  opts.iterations = 100;
  opts.num_elements = d;
  std::vector<Stats> per_k;
  std::vector<double> r1_16, r2_16;
  std::ostringstream means;
  for (int k : {1, 2, 4, 8, 16}) {
    std::vector<double> best;
    for (int seed = 0; seed < 10; ++seed) {
      const LockingScheme s = LockingScheme::haar(d, k, 5000 + 100 * k + seed);
      opts.seed = 9000 + 100 * k + seed;
      const SecurityReport rep = evaluate_protocol(make_protocol(s, 1, d), identity_channel(d), LockingMode::Strong, opts, &s);
      best.push_back(rep.without_key_bits);
      if (k == 16) {
        r1_16.push_back(rep.ratios.r1.value_or(NAN));
        r2_16.push_back(rep.ratios.r2.value_or(NAN));
      }
    }
    per_k.push_back(stats(best));
    means << " K=" << k << ":" << fmt(per_k.back().mean) << "+-" << fmt(per_k.back().se);
  }
  for (size_t i = 1; i < per_k.size(); ++i) {
    const double gap = per_k[i - 1].mean - per_k[i].mean;
    const double sigma = std::hypot(per_k[i - 1].se, per_k[i].se);
    if (!(gap > 3 * sigma && gap > 0)) o.pass = false;
  }
  const double r1 = stats(r1_16).mean, r2 = stats(r2_16).mean;
  o.pass = o.pass && r1 < 0.5 && r2 < 1.0 && 4 < std::log2(d);
  o.detail = "best I:" + means.str() + " | K=16 r1=" + fmt(r1) + " r2=" + fmt(r2) + " key bits 4 < log2 d=5";
  return o;
}

// 4
Outcome eb_zero() {
  Outcome o;
  std::vector<std::pair<std::string, KrausChannel>> zoo;
  for (double p : {2.0 / 3.0, 0.8, 1.0}) zoo.emplace_back("depolarizing p=" + fmt(p), qubit_depolarizing_eb_form(p));
  Rng rng(404);
  const int shapes[5][3] = {{2, 2, 3}, {2, 3, 4}, {3, 2, 4}, {3, 3, 5}, {2, 2, 4}};
  for (const auto& s : shapes) zoo.emplace_back("measure-prepare", random_measure_prepare(s[0], s[1], s[2], rng));
  double worst_slack = -1e9, worst_upper = 0.0;
  for (size_t c = 0; c < zoo.size(); ++c) {
    const KrausChannel& ch = zoo[c].second;
    for (int e = 0; e < 50; ++e) {
      worst_slack = std::max(worst_slack, eb_zero_capacity_certificate(ch, random_pure_ensemble(ch.in_dim(), 2 + e % 4, rng)).slack);
    }
    EnsembleSearchOptions so;
    so.seed = 40 + c;
    worst_upper = std::max(worst_upper, weak_lock_upper_single_letter(ch, so).upper);
  }
  o.pass = worst_slack <= 1e-6 && worst_upper <= 1e-4;
  o.detail = "max slack=" + fmt(worst_slack) + " max upper=" + fmt(worst_upper);
  return o;
}

// 5
Outcome bosonic_bounds() {
  Outcome o;
  Rng rng(55);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double ns = std::pow(10.0, -6.0 + 12.0 * rng.uniform01());
    worst = std::max(worst, strong_lock_bound_cs(ns));
  }
  const double g1 = std::abs(g_func(1.0) - 2.0);
  double gap = -1e9;
  for (int e = 0; e <= 20; ++e) {
    for (int j = 0; j <= 120; ++j) {
      const double eta = e / 20.0, ns = std::pow(10.0, -4.0 + j * 0.075);
      gap = std::max(gap, weak_lock_bound_pure_loss(eta, ns) - pure_loss_private_capacity(eta, ns));
    }
  }
  o.pass = worst <= std::numbers::log2e && g1 <= 1e-12 && gap <= 1.4427;
  o.detail = "max strong=" + fmt(worst) + " |g(1)-2|=" + fmt(g1) + " max(weak-private)=" + fmt(gap);
  return o;
}

// 6
Outcome wehrl_closed_forms() {
  Outcome o;
  double worst = std::abs(wehrl_entropy(FockOperator::vacuum()) - std::numbers::log2e);
  for (double n : {0.5, 1.0, 2.0}) {
    worst = std::max(worst, std::abs(wehrl_entropy(FockOperator::thermal(n)) - std::log2(n + 1) - std::numbers::log2e));
  }
  o.pass = worst <= 1e-4;
  o.detail = "max deviation=" + fmt(worst);
  return o;
}

// 7
Outcome thermal_maximizer() {
  Outcome o;
  Rng rng(77);
  double min_slack = 1e9, max_disagree = 0.0;
  for (double ns : {0.2, 0.5, 1.0}) {
    for (int t = 0; t < 100; ++t) {
      const HwCheck h = hw_thermal_maximizer_check(random_constrained_state(ns, rng));
      min_slack = std::min(min_slack, h.slack);
      max_disagree = std::max(max_disagree, std::abs(h.slack - h.relative_form));
    }
  }
  o.pass = min_slack >= -1e-3 && max_disagree <= 2e-3;
  o.detail = "min slack=" + fmt(min_slack) + " max |forms|=" + fmt(max_disagree);
  return o;
}

// 8
Outcome ppm_throughput() {
  Outcome o;
  double worst = 0.0;
  for (double eta : {0.3, 0.5, 0.9}) {
    for (int n : {8, 16}) {
      PpmConfig c;
      c.n_modes = n;
      c.eta = eta;
      c.num_keys = 4;
      c.trials = 100000;
      c.rng_seed = 800 + n + static_cast<int>(eta * 10);
      const PpmReport r = lossy_feedback_simulate(c);
      const double z = std::abs(r.throughput_bits_per_block - eta * std::log2(n)) / r.throughput_stderr;
      worst = std::max(worst, z);
    }
  }
  o.pass = worst <= 3.0;
  o.detail = "max |estimate - eta log2 n| / stderr=" + fmt(worst);
  return o;
}

// 9
Outcome coherent_ppm() {
  Outcome o;
  const int n = 8;
  const double nt = 0.1;
  double norm_err = 0.0, vac_err = 0.0;
  for (int k : {1, 4}) {
    const CoherentPpmScheme s(n, std::sqrt(nt), k, 90 + k);
    const auto w = s.sector_norms();
    norm_err = std::max({norm_err, std::abs(w[0] + w[1] + w[2] - 1.0), std::abs(w[0] - std::exp(-nt)),
                         std::abs(w[1] - nt * std::exp(-nt))});
    for (int m = 0; m < n; ++m) {
      for (int kk = 0; kk < k; ++kk) {
        norm_err = std::max(norm_err, std::abs(s.encoded_vector(m, kk).squaredNorm() - 1.0));
        vac_err = std::max(vac_err, std::abs(std::norm(s.encoded_vector(m, kk)(0)) - std::exp(-nt)));
      }
    }
  }
  AccInfoOptions opts;
  opts.restarts = 2;
  opts.iterations = 150;
  std::vector<Stats> per_k;
  std::ostringstream means;
  for (int k : {1, 2, 4, 8}) {
    std::vector<double> v;
    for (int seed = 0; seed < 10; ++seed) {
      opts.seed = 300 + 10 * k + seed;
      v.push_back(i_num_estimate(CoherentPpmScheme(n, std::sqrt(nt), k, 200 + 10 * k + seed), opts).value);
    }
    per_k.push_back(stats(v));
    means << " K=" << k << ":" << fmt(per_k.back().mean) << "+-" << fmt(per_k.back().se);
  }
  bool trend = true;
  for (size_t i = 1; i < per_k.size(); ++i) {
    if (per_k[i].mean - per_k[i - 1].mean > 3 * std::hypot(per_k[i].se, per_k[i - 1].se)) trend = false;
  }
  o.pass = norm_err <= 1e-9 && vac_err <= 2 * nt * nt && trend;
  o.detail = "norm err=" + fmt(norm_err) + " vacuum err=" + fmt(vac_err) + " I_num:" + means.str();
  return o;
}

// 10
Outcome additivity() {
  Outcome o;
  const std::pair<const char*, const char*> pairs[5] = {{"constant-e", "hadamard-flag"},
                                                        {"hadamard-flag", "weak-measurement"},
                                                        {"weak-measurement", "amplitude-damping"},
                                                        {"amplitude-damping", "random-instrument"},
                                                        {"random-instrument", "weak-measurement"}};
  double worst = -1e9;
  Rng rng(1010);
  int idx = 0;
  for (const auto& [a, b] : pairs) {
    const WiretapChannel w1 = example_wiretap(a, 11 + idx), w2 = example_wiretap(b, 21 + idx);
    std::vector<Vector> v1, v2;
    for (int i = 0; i < 3; ++i) {
      v1.push_back(random_pure_vector(2, rng));
      v2.push_back(random_pure_vector(2, rng));
    }
    const Ensemble e1 = Ensemble::from_pure({1.0 / 3, 1.0 / 3, 1.0 / 3}, v1);
    const Ensemble e2 = Ensemble::from_pure({1.0 / 3, 1.0 / 3, 1.0 / 3}, v2);
    worst = std::max(worst, degraded_product_additivity_check(w1, w2, e1, e2, 200, 31 + idx).slack);
    ++idx;
  }
  o.pass = worst <= 1e-4;
  o.detail = "max slack=" + fmt(worst);
  return o;
}

// 11
Outcome classical_inequality() {
  Outcome o;
  Rng rng(1111);
  double min_slack = 1e9;
  bool holds = true;
  for (int t = 0; t < 1000; ++t) {
    JointMYK j{2 + static_cast<int>(rng.uniform_index(4)), 2 + static_cast<int>(rng.uniform_index(4)),
               1 + static_cast<int>(rng.uniform_index(4)), {}};
    double z = 0.0;
    for (int i = 0; i < j.m * j.y * j.k; ++i) {
      // Sparse joints hit the boundary cases.
      const double x = rng.uniform01() < 0.3 ? 0.0 : rng.exponential();
      j.p.push_back(x);
      z += x;
    }
    if (z == 0.0) j.p[0] = z = 1.0;
    for (double& x : j.p) x /= z;
    const ClassicalInequalityResult r = classical_inequality_check(j);
    holds = holds && r.holds;
    min_slack = std::min(min_slack, r.slack);
  }
  double otp_err = 0.0;
  for (int d : {2, 4, 8}) {
    JointMYK otp{d, d, d, std::vector<double>(static_cast<size_t>(d) * d * d, 0.0)};
    for (int m = 0; m < d; ++m) {
      for (int k = 0; k < d; ++k) otp.p[(m * d + (m ^ k)) * d + k] = 1.0 / (d * d);
    }
    otp_err = std::max(otp_err, std::abs(classical_inequality_check(otp).slack));
  }
  o.pass = holds && min_slack >= -1e-12 && otp_err <= 1e-9;
  o.detail = "min slack=" + fmt(min_slack) + " one-time-pad |slack|=" + fmt(otp_err);
  return o;
}

// 12
Outcome determinism() {
  Outcome o;
  std::vector<std::string> bad;
  for (const auto& cmd : cli::subcommands()) {
    std::string first;
    for (int rep = 0; rep < 2; ++rep) {
      const char* argv[] = {"qlock", cmd.c_str(), "--seed", "20260101"};
      std::ostringstream out, err;
      const int code = cli::main_entry(4, argv, out, err);
      if (code != cli::kOk) bad.push_back(cmd + "(exit " + std::to_string(code) + ")");
      if (rep == 0) {
        first = out.str();
      } else if (out.str() != first || first.empty()) {
        bad.push_back(cmd);
      }
    }
  }
  o.pass = bad.empty();
  o.detail = std::to_string(cli::subcommands().size()) + " subcommands";
  for (const auto& b : bad) o.detail += " differs:" + b;
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all = {
      {1, "noiseless decode", 10, noiseless_decode},
      {2, "accessible-information oracle", 60, accinfo_oracle},
      {3, "locking-effect trend", 600, locking_trend},
      {4, "entanglement-breaking zero capacity", 300, eb_zero},
      {5, "bosonic bounds", 10, bosonic_bounds},
      {6, "Wehrl closed forms", 30, wehrl_closed_forms},
      {7, "thermal maximizer", 300, thermal_maximizer},
      {8, "PPM feedback throughput", 60, ppm_throughput},
      {9, "coherent PPM", 600, coherent_ppm},
      {10, "degraded additivity", 600, additivity},
      {11, "classical inequality", 60, classical_inequality},
      {12, "CLI determinism", 300, determinism},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = out.pass && in_time;
    failed += pass ? 0 : 1;
    std::printf("%s [%2d] %s (%.1f s / %.0f s budget%s): %s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs, c.budget_s,
                in_time ? "" : ", over budget", out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed == 0 ? 0 : 1;
}
