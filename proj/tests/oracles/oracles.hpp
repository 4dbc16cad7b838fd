// Independent reference computations used by the tests. Written against
// plain std::complex / std::vector so they share no code with the library.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using c64 = std::complex<double>;

inline double xlog2x(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

inline double h2(double p) { return -xlog2x(p) - xlog2x(1.0 - p); }

inline double shannon(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p) h -= xlog2x(v);
  return h;
}

/// I(X;Y) for a joint table given row-major as rows x cols.
inline double mutual_info(const std::vector<std::vector<double>>& j) {
  std::vector<double> px(j.size(), 0.0), py(j.front().size(), 0.0);
  for (size_t x = 0; x < j.size(); ++x) {
    for (size_t y = 0; y < j[x].size(); ++y) {
      px[x] += j[x][y];
      py[y] += j[x][y];
    }
  }
  double mi = 0.0;
  for (size_t x = 0; x < j.size(); ++x) {
    for (size_t y = 0; y < j[x].size(); ++y) {
      if (j[x][y] > 0.0) mi += j[x][y] * std::log2(j[x][y] / (px[x] * py[y]));
    }
  }
  return mi;
}

/// Mutual information of two qubit pure states (priors p0, 1-p0) measured
/// in the real basis {(cos t, sin t), (-sin t, cos t)}.
inline double two_state_mi_at(double t, const c64 a[2], const c64 b[2], double p0) {
  const double c = std::cos(t), s = std::sin(t);
  auto prob = [&](const c64 v[2], int y) {
    const c64 amp = y == 0 ? c * v[0] + s * v[1] : -s * v[0] + c * v[1];
    return std::norm(amp);
  };
  std::vector<std::vector<double>> j = {{p0 * prob(a, 0), p0 * prob(a, 1)},
                                        {(1 - p0) * prob(b, 0), (1 - p0) * prob(b, 1)}};
  return mutual_info(j);
}

/// Brute-force projective grid oracle for two real qubit pure states:
/// 10^4 angles on [0, pi) then golden-section refinement of the best cell.
inline double two_state_projective_oracle(const c64 a[2], const c64 b[2], double p0 = 0.5) {
  const int n = 10000;
  const double pi = std::numbers::pi;
  int best = 0;
  double bestv = -1.0;
  for (int i = 0; i < n; ++i) {
    const double v = two_state_mi_at(pi * i / n, a, b, p0);
    if (v > bestv) {
      bestv = v;
      best = i;
    }
  }
  double lo = pi * (best - 1) / n, hi = pi * (best + 1) / n;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 100; ++it) {
    const double m1 = hi - g * (hi - lo), m2 = lo + g * (hi - lo);
    if (two_state_mi_at(m1, a, b, p0) < two_state_mi_at(m2, a, b, p0)) {
      lo = m1;
    } else {
      hi = m2;
    }
  }
  return std::max(bestv, two_state_mi_at(0.5 * (lo + hi), a, b, p0));
}

/// Closed form for equiprobable pure qubit states with overlap |<a|b>| = c.
inline double two_state_equiprobable_closed_form(double c) {
  return 1.0 - h2(0.5 * (1.0 - std::sqrt(1.0 - c * c)));
}

/// Thermal entropy g(N) by direct Fock sum.
inline double thermal_entropy_fock_sum(double n, int cutoff) {
  double h = 0.0;
  for (int k = 0; k < cutoff; ++k) {
    const double p = std::pow(n, k) / std::pow(n + 1.0, k + 1);
    h -= xlog2x(p);
  }
  return h;
}

/// Heterodyne mutual information of a coherent-state alphabet by direct
/// integration of the outcome density Q_x(beta) = exp(-|beta - alpha_x|^2)/pi
/// on a Cartesian grid.
inline double heterodyne_mi_cartesian(const std::vector<c64>& alphas, const std::vector<double>& probs,
                                      double half_width, int n) {
  const double h = 2.0 * half_width / n;
  const double pi = std::numbers::pi;
  double mi = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const c64 beta(-half_width + (i + 0.5) * h, -half_width + (k + 0.5) * h);
      std::vector<double> q(alphas.size());
      double qbar = 0.0;
      for (size_t x = 0; x < alphas.size(); ++x) {
        q[x] = std::exp(-std::norm(beta - alphas[x])) / pi;
        qbar += probs[x] * q[x];
      }
      for (size_t x = 0; x < alphas.size(); ++x) {
        if (q[x] > 0.0 && qbar > 0.0) mi += probs[x] * q[x] * std::log2(q[x] / qbar) * h * h;
      }
    }
  }
  return mi;
}

}  // namespace oracle
