#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qlock/core/ensemble.hpp"
#include "qlock/core/types.hpp"

namespace qlock {

/// I(X;Y) in bits for the outcome of `povm` on `ens`.
double acc_info_of_measurement(const Ensemble& ens, const Povm& povm);

/// H(sum_x p_x rho_x) - sum_x p_x H(rho_x).
double holevo_chi(const Ensemble& ens);

struct AccInfoOptions {
  int restarts = 8;
  int iterations = 300;
  std::uint64_t seed = 0;
  /// Number of rank-one elements; 0 selects d*d. Never more than d*d.
  int num_elements = 0;
  /// Stop a restart once an accepted step gains less than this.
  double tolerance = 1e-12;
  /// Extra measurements evaluated and, when rank one with few enough
  /// elements, used as warm starts.
  std::vector<Povm> pool;
  /// Adds the standard and Fourier bases to the pool.
  bool basis_pool = true;
};

struct AccInfoResult {
  double lower_bits = 0.0;
  double upper_bits = 0.0;
  Povm achieving_povm = Povm::trivial(1);
  std::string lower_method;
  std::string upper_method;
  int restarts_used = 0;
  int iterations = 0;
  /// Objective after each accepted step of the restart that won.
  std::vector<double> history;
};

/// Multistart ascent over rank-one POVMs. lower_bits is the best mutual
/// information found (a lower bound on I_acc), upper_bits is Holevo chi.
/// Throws CapabilityError for d > 64.
AccInfoResult acc_info_optimize(const Ensemble& ens, const AccInfoOptions& opts = {});

/// log2|M| - sum_y mu_y/(|M||K|) sum_k H(q_yk), q_yk^m = |<phi_y|U_k|m>|^2.
/// Throws ValidationError if an element is not rank one.
double entropy_min_objective(std::span<const Matrix> key_unitaries, const Povm& povm);

/// rho^{-1/2} p_x rho_x rho^{-1/2}, with I - Pi_supp appended when rho is
/// not full rank.
Povm pretty_good_measurement(const Ensemble& ens);

/// Probability that the PGM (or any POVM with one outcome per label)
/// guesses the label. Extra outcomes count as failures.
double guessing_probability(const Ensemble& ens, const Povm& povm);

struct AdversaryOutcome {
  std::string name;
  std::optional<double> bits;  // empty when not applicable
  std::string method;
};

struct AdversarySuiteReport {
  std::vector<AdversaryOutcome> outcomes;
  double best_bits = 0.0;
  std::string best_name;
  double holevo_bits = 0.0;
  AccInfoResult optimized;
};

/// Standard basis, Fourier basis, pretty-good measurement, the heterodyne
/// slot (not applicable in finite dimensions), any named extras, and the
/// optimized rank-one measurement seeded with all of them.
AdversarySuiteReport run_adversary_suite(const Ensemble& ens, const AccInfoOptions& opts,
                                         std::span<const std::pair<std::string, Povm>> extras = {});

}  // namespace qlock
