#include "qlock/bosonic/bosonic.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "qlock/core/entropy.hpp"
#include "qlock/core/linalg.hpp"
#include "qlock/core/parallel.hpp"

namespace qlock {

namespace {

constexpr double kLog2e = std::numbers::log2e;

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

void check_ns(double ns) {
  if (!(ns >= 0.0) || !std::isfinite(ns)) throw ValidationError("mean photon number must be finite and >= 0");
}

void check_eta(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw ValidationError("transmissivity must lie in [0, 1]");
}

}  // namespace

double g_func(double n) {
  check_ns(n);
  return xlog2x(n + 1.0) - xlog2x(n);
}

double strong_lock_bound_cs(double ns) {
  check_ns(ns);
  // Same as g(N) - log2(1+N) = N log2(1 + 1/N), without the cancellation at large N.
  if (ns == 0.0) return 0.0;
  return ns * std::log1p(1.0 / ns) * kLog2e;
}

double pure_loss_private_capacity(double eta, double ns) {
  check_eta(eta);
  check_ns(ns);
  return std::max(0.0, g_func(eta * ns) - g_func((1.0 - eta) * ns));
}

double weak_lock_bound_pure_loss(double eta, double ns) {
  const double cap = pure_loss_private_capacity(eta, ns);
  if (eta == 1.0) return cap;
  return cap + strong_lock_bound_cs((1.0 - eta) * ns);
}

SmallNsExpansion small_ns_expansion(double ns) {
  check_ns(ns);
  SmallNsExpansion e;
  const double nln = ns > 0.0 ? ns * std::log(ns) : 0.0;
  e.g_approx = (-nln + ns + ns * ns / 2.0) * kLog2e;
  e.log_approx = (ns - ns * ns / 2.0) * kLog2e;
  e.bound_approx = (-nln + ns * ns) * kLog2e;
  e.valid = ns < 0.1;
  return e;
}

BosonicParams BosonicParams::from_total(double eta, double n_tot, int n_modes) {
  if (n_modes < 1) throw ValidationError("number of modes must be positive");
  BosonicParams p;
  p.eta = eta;
  p.n_tot = n_tot;
  p.n_modes = n_modes;
  p.ns = n_tot / n_modes;
  p.validate();
  return p;
}

void BosonicParams::validate() const {
  check_eta(eta);
  check_ns(ns);
  check_ns(n_tot);
  if (n_modes < 1) throw ValidationError("number of modes must be positive");
  if (n_tot > 0.0 && std::abs(ns - n_tot / n_modes) > 1e-12 * std::max(1.0, ns)) {
    throw ValidationError("N_S must equal N_tot / n_modes");
  }
}

FockOperator::FockOperator(DensityOperator rho) : rho_(std::move(rho)) {}

FockOperator FockOperator::vacuum(int cutoff) { return FockOperator(DensityOperator::basis_state(cutoff, 0)); }

FockOperator FockOperator::fock(int n, int cutoff) { return FockOperator(DensityOperator::basis_state(cutoff, n)); }

FockOperator FockOperator::thermal(double mean, int cutoff) {
  check_ns(mean);
  std::vector<double> p(cutoff);
  const double r = mean / (mean + 1.0);
  double total = 0.0;
  for (int n = 0; n < cutoff; ++n) {
    p[n] = std::pow(r, n) / (mean + 1.0);
    total += p[n];
  }
  for (double& v : p) v /= total;
  return FockOperator(DensityOperator::diagonal(p));
}

FockOperator FockOperator::thermal(double mean) {
  check_ns(mean);
  int cutoff = 40;
  const double r = mean / (mean + 1.0);
  while (std::pow(r, cutoff - 2) > 1e-6) {
    cutoff *= 2;
    if (cutoff > kMaxDim) throw CapabilityError("thermal state needs a Fock cutoff above the supported maximum");
  }
  return thermal(mean, cutoff);
}

FockOperator FockOperator::coherent(cplx alpha, int cutoff) {
  Vector v(cutoff);
  v(0) = std::exp(-std::norm(alpha) / 2.0);
  for (int n = 1; n < cutoff; ++n) v(n) = v(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  return FockOperator(DensityOperator::pure(v));
}

FockOperator FockOperator::coherent(cplx alpha) {
  int cutoff = 40;
  for (;;) {
    FockOperator f = coherent(alpha, cutoff);
    // Population beyond the cutoff before renormalization.
    double kept = 0.0;
    cplx c = std::exp(-std::norm(alpha) / 2.0);
    for (int n = 0; n < cutoff; ++n) {
      if (n > 0) c *= alpha / std::sqrt(static_cast<double>(n));
      kept += std::norm(c);
    }
    if (1.0 - kept < 1e-12 && f.well_truncated()) return f;
    cutoff *= 2;
    if (cutoff > kMaxDim) throw CapabilityError("coherent state needs a Fock cutoff above the supported maximum");
  }
}

FockOperator FockOperator::phase_averaged_coherent(double mean, int cutoff) {
  check_ns(mean);
  std::vector<double> p(cutoff);
  double term = std::exp(-mean);
  double total = 0.0;
  for (int n = 0; n < cutoff; ++n) {
    if (n > 0) term *= mean / n;
    p[n] = term;
    total += term;
  }
  for (double& v : p) v /= total;
  return FockOperator(DensityOperator::diagonal(p));
}

double FockOperator::mean_photon() const {
  double m = 0.0;
  for (int n = 0; n < cutoff(); ++n) m += n * rho_.matrix()(n, n).real();
  return m;
}

cplx FockOperator::first_moment() const {
  cplx m = 0.0;
  // Tr[a rho] = sum_n sqrt(n) <n|rho|n-1>.
  for (int n = 1; n < cutoff(); ++n) m += std::sqrt(static_cast<double>(n)) * rho_.matrix()(n, n - 1);
  return m;
}

double FockOperator::tail_mass() const {
  double t = 0.0;
  for (int n = std::max(0, cutoff() - 2); n < cutoff(); ++n) t += rho_.matrix()(n, n).real();
  return t;
}

QFunctionGrid QFunctionGrid::polar(double radius, int radial_panels, int angular_nodes) {
  if (!(radius > 0.0) || radial_panels < 1 || angular_nodes < 1) throw ValidationError("bad quadrature grid");
  using Gl = boost::math::quadrature::gauss<double, 30>;
  std::vector<double> xs, ws;  // nodes on [-1, 1]
  const auto& a = Gl::abscissa();
  const auto& w = Gl::weights();
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) {
      xs.push_back(0.0);
      ws.push_back(w[i]);
    } else {
      xs.push_back(a[i]);
      ws.push_back(w[i]);
      xs.push_back(-a[i]);
      ws.push_back(w[i]);
    }
  }
  QFunctionGrid g;
  g.radius = radius;
  g.angular_nodes = angular_nodes;
  const double h = radius / radial_panels;
  const double dtheta = 2.0 * std::numbers::pi / angular_nodes;
  for (int p = 0; p < radial_panels; ++p) {
    for (size_t i = 0; i < xs.size(); ++i) {
      const double r = h * (p + 0.5 * (xs[i] + 1.0));
      const double wr = 0.5 * h * ws[i] * r * dtheta / std::numbers::pi;
      ++g.radial_nodes;
      for (int t = 0; t < angular_nodes; ++t) {
        g.points.push_back(std::polar(r, t * dtheta));
        g.weights.push_back(wr);
      }
    }
  }
  return g;
}

QFunctionGrid QFunctionGrid::for_state(const FockOperator& rho) {
  const double n = rho.mean_photon();
  return polar(std::max(6.0 * std::sqrt(n + 1.0), std::sqrt(static_cast<double>(rho.cutoff())) + 6.0));
}

std::vector<double> q_function(const FockOperator& rho, const QFunctionGrid& grid) {
  const int c = rho.cutoff();
  const Matrix& m = rho.state().matrix();
  const int np = static_cast<int>(grid.points.size());
  std::vector<double> q(np);
  constexpr int kBlock = 2048;
  const int blocks = (np + kBlock - 1) / kBlock;
  parallel_for(blocks, [&](int b) {
    const int lo = b * kBlock;
    const int hi = std::min(np, lo + kBlock);
    // Columns hold the coherent-state amplitudes <n|beta>.
    Matrix v(c, hi - lo);
    for (int j = lo; j < hi; ++j) {
      const cplx beta = grid.points[j];
      cplx amp = std::exp(-std::norm(beta) / 2.0);
      v(0, j - lo) = amp;
      for (int n = 1; n < c; ++n) {
        amp *= beta / std::sqrt(static_cast<double>(n));
        v(n, j - lo) = amp;
      }
    }
    const Matrix mv = m * v;
    for (int j = lo; j < hi; ++j) {
      q[j] = std::clamp(v.col(j - lo).dot(mv.col(j - lo)).real(), 0.0, 1.0);
    }
  });
  return q;
}

namespace {

double wehrl_from_q(const std::vector<double>& q, const QFunctionGrid& grid) {
  double w = 0.0;
  for (size_t j = 0; j < q.size(); ++j) w -= grid.weights[j] * xlog2x(q[j]);
  return w;
}

double integral(const std::vector<double>& q, const QFunctionGrid& grid) {
  double s = 0.0;
  for (size_t j = 0; j < q.size(); ++j) s += grid.weights[j] * q[j];
  return s;
}

void require_truncated(const FockOperator& rho) {
  if (!rho.well_truncated()) {
    std::ostringstream os;
    os << "state is not well truncated (tail mass " << rho.tail_mass() << ")";
    throw ValidationError(os.str());
  }
}

}  // namespace

double wehrl_entropy(const FockOperator& rho, const std::optional<QFunctionGrid>& grid) {
  require_truncated(rho);
  const QFunctionGrid g = grid ? *grid : QFunctionGrid::for_state(rho);
  if (g.radius < std::sqrt(static_cast<double>(rho.cutoff()))) throw ValidationError("grid radius below sqrt(cutoff)");
  return wehrl_from_q(q_function(rho, g), g);
}

HwCheck hw_thermal_maximizer_check(const FockOperator& rho) {
  require_truncated(rho);
  if (std::abs(rho.first_moment()) > 1e-6) throw ValidationError("state violates Tr[a rho] = 0");
  HwCheck r;
  r.mean_photon = rho.mean_photon();
  const FockOperator th = FockOperator::thermal(r.mean_photon, rho.cutoff());
  require_truncated(th);
  const QFunctionGrid grid = QFunctionGrid::for_state(th.mean_photon() > r.mean_photon ? th : rho);
  const std::vector<double> q = q_function(rho, grid);
  const std::vector<double> qt = q_function(th, grid);
  r.q_normalization = integral(q, grid);
  const double h = von_neumann_entropy(rho.state());
  const double ht = von_neumann_entropy(th.state());
  const double w = wehrl_from_q(q, grid);
  const double wt = wehrl_from_q(qt, grid);
  r.slack = (ht - wt) - (h - w);
  double dq = 0.0;
  for (size_t j = 0; j < q.size(); ++j) {
    if (q[j] <= 0.0) continue;
    dq += grid.weights[j] * q[j] * (std::log2(q[j]) - std::log2(std::max(qt[j], 1e-300)));
  }
  r.relative_form = relative_entropy(rho.state(), th.state()) - dq;
  return r;
}

FockOperator random_constrained_state(double ns, Rng& rng, int cutoff) {
  check_ns(ns);
  const int levels = std::max(3, static_cast<int>(std::ceil(3.0 * ns)) + 3);
  if (levels + 1 > cutoff) throw CapabilityError("mean photon number too large for the Fock cutoff");
  for (int attempt = 0; attempt < 100; ++attempt) {
    const int rank = 1 + static_cast<int>(rng.uniform_index(levels));
    const Matrix small = random_density(levels, rng, rank).matrix();
    const int k = 2 + static_cast<int>(rng.uniform_index(3));
    Matrix m = Matrix::Zero(cutoff, cutoff);
    for (int i = 0; i < levels; ++i) {
      for (int j = 0; j < levels; ++j) {
        if ((i - j) % k == 0) m(i, j) = small(i, j);
      }
    }
    double mean = 0.0;
    for (int n = 0; n < levels; ++n) mean += n * m(n, n).real();
    if (std::abs(mean - ns) < 1e-15) {
      // already on target
    } else if (mean > ns) {
      const double t = ns / mean;
      m *= t;
      m(0, 0) += 1.0 - t;
    } else {
      const double t = (levels - ns) / (levels - mean);
      if (!(t > 0.0 && t <= 1.0)) continue;
      m *= t;
      m(levels, levels) += 1.0 - t;
    }
    FockOperator f(DensityOperator::from_matrix(hermitian_part(m)));
    if (std::abs(f.mean_photon() - ns) <= 1e-9 && std::abs(f.first_moment()) <= 1e-12) return f;
  }
  throw ValidationError("constrained-state sampler failed to hit the target mean");
}

double heterodyne_mutual_info_coherent(std::span<const cplx> alphas, std::span<const double> probs) {
  if (alphas.empty() || alphas.size() != probs.size()) throw ValidationError("need one probability per amplitude");
  double total = 0.0;
  double amax = 0.0;
  for (size_t i = 0; i < alphas.size(); ++i) {
    if (probs[i] < 0.0) throw ValidationError("negative probability");
    total += probs[i];
    amax = std::max(amax, std::abs(alphas[i]));
  }
  if (std::abs(total - 1.0) > 1e-9) throw ValidationError("probabilities must sum to 1");
  const double radius = amax + 7.0;
  const int panels = std::max(6, static_cast<int>(std::ceil(radius / 1.5)));
  const int angles = std::max(128, 32 * static_cast<int>(std::ceil(radius * amax / 4.0 + 1.0)));
  const QFunctionGrid grid = QFunctionGrid::polar(radius, panels, angles);
  std::vector<double> q(grid.points.size(), 0.0);
  parallel_for(static_cast<int>(grid.points.size()), [&](int j) {
    double s = 0.0;
    for (size_t i = 0; i < alphas.size(); ++i) s += probs[i] * std::exp(-std::norm(grid.points[j] - alphas[i]));
    q[j] = s;
  });
  return wehrl_from_q(q, grid) - kLog2e;
}

std::vector<SweepRow> bosonic_sweep(std::span<const double> ns_values, std::span<const double> etas) {
  std::vector<SweepRow> rows;
  for (double eta : etas) {
    for (double ns : ns_values) {
      SweepRow r;
      r.ns = ns;
      r.eta = eta;
      r.g = g_func(ns);
      const SmallNsExpansion e = small_ns_expansion(ns);
      r.bound_expansion = e.valid ? e.bound_approx : std::numeric_limits<double>::quiet_NaN();
      r.strong_bound = strong_lock_bound_cs(ns);
      r.private_capacity = pure_loss_private_capacity(eta, ns);
      r.weak_bound = weak_lock_bound_pure_loss(eta, ns);
      rows.push_back(r);
    }
  }
  return rows;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
  std::ostringstream os;
  os << "parameter,eta,exact,expansion,bound,private_capacity,weak_bound\n";
  os << std::setprecision(17);
  for (const auto& r : rows) {
    os << r.ns << ',' << r.eta << ',' << r.g << ',';
    if (std::isnan(r.bound_expansion)) {
      os << "";
    } else {
      os << r.bound_expansion;
    }
    os << ',' << r.strong_bound << ',' << r.private_capacity << ',' << r.weak_bound << '\n';
  }
  return os.str();
}

}  // namespace qlock
