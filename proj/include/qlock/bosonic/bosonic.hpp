#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qlock/core/density.hpp"
#include "qlock/core/random.hpp"

namespace qlock {

/// g(x) = (x+1) log2(x+1) - x log2 x, the entropy of a thermal state.
double g_func(double n);

/// g(N_S) - log2(1 + N_S).
double strong_lock_bound_cs(double ns);

/// max{0, g(eta N_S) - g((1-eta) N_S)}.
double pure_loss_private_capacity(double eta, double ns);

/// Private capacity plus g((1-eta) N_S) - log2(1 + (1-eta) N_S).
double weak_lock_bound_pure_loss(double eta, double ns);

struct SmallNsExpansion {
  double g_approx = 0.0;
  double log_approx = 0.0;
  double bound_approx = 0.0;
  /// False when N_S >= 0.1, where the leading terms are not trustworthy.
  bool valid = true;
};
SmallNsExpansion small_ns_expansion(double ns);

/// Per-mode parameters. N_S is N_tot / n_modes when both are given.
struct BosonicParams {
  double eta = 1.0;
  double ns = 0.0;
  double n_tot = 0.0;
  int n_modes = 1;

  static BosonicParams from_total(double eta, double n_tot, int n_modes);
  void validate() const;
};

/// Single-mode state truncated to levels 0 .. cutoff-1.
class FockOperator {
 public:
  explicit FockOperator(DensityOperator rho);

  static FockOperator vacuum(int cutoff = 40);
  static FockOperator fock(int n, int cutoff = 40);
  /// Geometric distribution with mean N, truncated and renormalized.
  static FockOperator thermal(double mean, int cutoff);
  /// Starts at cutoff 40 and doubles until the truncated tail is below 1e-6.
  static FockOperator thermal(double mean);
  static FockOperator coherent(cplx alpha, int cutoff);
  static FockOperator coherent(cplx alpha);
  /// Poisson mixture of Fock states (uniformly phase-averaged |alpha>).
  static FockOperator phase_averaged_coherent(double mean, int cutoff = 40);

  const DensityOperator& state() const { return rho_; }
  int cutoff() const { return rho_.dim(); }
  double mean_photon() const;
  /// Tr[a rho].
  cplx first_moment() const;
  /// Population of the two highest retained levels.
  double tail_mass() const;
  bool well_truncated() const { return tail_mass() <= 1e-6; }

 private:
  DensityOperator rho_;
};

/// Polar quadrature for integrals of the form  (1/pi) \int d^2 beta f(beta).
struct QFunctionGrid {
  std::vector<cplx> points;
  std::vector<double> weights;
  double radius = 0.0;
  int radial_nodes = 0;
  int angular_nodes = 0;

  /// Gauss-Legendre panels in the radius (30 nodes each) up to `radius`,
  /// uniform angles.
  static QFunctionGrid polar(double radius, int radial_panels = 6, int angular_nodes = 128);
  /// Radius max(6 sqrt(N+1), sqrt(cutoff) + 6).
  static QFunctionGrid for_state(const FockOperator& rho);
};

/// Q(beta) = <beta|rho|beta> at every grid point.
std::vector<double> q_function(const FockOperator& rho, const QFunctionGrid& grid);

/// -(1/pi) \int Q log2 Q. Throws ValidationError unless the state is well
/// truncated and the grid reaches sqrt(cutoff).
double wehrl_entropy(const FockOperator& rho, const std::optional<QFunctionGrid>& grid = std::nullopt);

struct HwCheck {
  double slack = 0.0;          // [H(th) - W(th)] - [H(rho) - W(rho)]
  double relative_form = 0.0;  // D(rho||th) - D(Q_rho||Q_th)
  double mean_photon = 0.0;
  double q_normalization = 0.0;
};

/// Compares rho against the thermal state of equal mean photon number.
/// Throws ValidationError if |Tr[a rho]| > 1e-6 or rho is badly truncated.
HwCheck hw_thermal_maximizer_check(const FockOperator& rho);

/// Random state with Tr[a rho] = 0 and mean photon number `ns`: a random
/// density matrix on a few low levels, averaged over a Z_k phase group
/// (k >= 2), then mixed with the vacuum or a higher Fock state to set the mean.
FockOperator random_constrained_state(double ns, Rng& rng, int cutoff = 40);

/// W(sum_x p_x |alpha_x><alpha_x|) - log2 e, with the mixture's Q function
/// evaluated in closed form on a polar grid.
double heterodyne_mutual_info_coherent(std::span<const cplx> alphas, std::span<const double> probs);

struct SweepRow {
  double ns = 0.0;
  double eta = 0.0;
  double g = 0.0;
  double bound_expansion = 0.0;  // NaN when N_S >= 0.1
  double strong_bound = 0.0;
  double private_capacity = 0.0;
  double weak_bound = 0.0;
};
std::vector<SweepRow> bosonic_sweep(std::span<const double> ns_values, std::span<const double> etas);
/// Header: parameter,eta,exact,expansion,bound,private_capacity,weak_bound.
std::string sweep_csv(std::span<const SweepRow> rows);

}  // namespace qlock
