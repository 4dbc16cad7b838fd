#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qlock/core/channel.hpp"
#include "qlock/core/ensemble.hpp"

namespace qlock {

/// Isometry A -> B (x) E (x) F, row index (b * e_dim + e) * f_dim + f.
class WiretapChannel {
 public:
  /// Wraps an arbitrary isometry. Such a wiretap carries no degrading map.
  static WiretapChannel from_isometry(const Matrix& v, int b_dim, int e_dim, int f_dim);

  /// Degraded wiretap built from a quantum instrument and a preparation:
  /// the receiver gets K_{y,j} rho K_{y,j}^dagger together with a flag |y>,
  /// the eavesdropper gets tau_y. The degrading map reads the flag and
  /// prepares tau_y. instrument[y] lists the Kraus ops of outcome y.
  static WiretapChannel degraded(const std::vector<std::vector<Matrix>>& instrument,
                                 const std::vector<DensityOperator>& taus);

  const Matrix& isometry() const { return v_; }
  int in_dim() const { return static_cast<int>(v_.cols()); }
  int b_dim() const { return b_dim_; }
  int e_dim() const { return e_dim_; }
  int f_dim() const { return f_dim_; }

  KrausChannel to_b() const;
  KrausChannel to_e() const;

  /// B -> E map with to_e = degrading_map o to_b, when known by construction.
  const std::optional<KrausChannel>& degrading_map() const { return degrading_; }
  bool is_constructively_degraded() const { return degrading_.has_value(); }

 private:
  Matrix v_;
  int b_dim_ = 1;
  int e_dim_ = 1;
  int f_dim_ = 1;
  std::optional<KrausChannel> degrading_;
};

/// I(X;B) - I(X;E) on the cq states of the ensemble; may be negative.
double private_information(const WiretapChannel& wt, const Ensemble& ens);

struct AdditivityReport {
  double slack = 0.0;  // max P_joint - (P1_max + P2_max)
  double p1_max = 0.0;
  double p2_max = 0.0;
  double p_joint_max = 0.0;
  int priors_tried = 0;
};

/// Searches correlated priors over the product states psi_x1 (x) phi_x2 of
/// two degraded wiretaps used in parallel. Both ensembles must be pure.
/// Throws StructureError for wiretaps without a degrading map and
/// ValidationError for mixed ensemble states or a nonpositive budget.
AdditivityReport degraded_product_additivity_check(const WiretapChannel& wt1, const WiretapChannel& wt2,
                                                   const Ensemble& ens1, const Ensemble& ens2,
                                                   int joint_search_budget, std::uint64_t seed = 0);

/// Qubit wiretaps used by the tests and the CLI: "constant-e", "hadamard-flag",
/// "weak-measurement", "amplitude-damping", "random-instrument".
WiretapChannel example_wiretap(const std::string& name, std::uint64_t seed = 0);
std::vector<std::string> example_wiretap_names();

}  // namespace qlock
