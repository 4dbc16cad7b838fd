#pragma once

#include <cstdint>
#include <string>

#include "qlock/accinfo/accinfo.hpp"
#include "qlock/core/channel.hpp"
#include "qlock/core/ensemble.hpp"

namespace qlock {

struct EnsembleSearchOptions {
  /// Restarts of the coherent-information ascent over average inputs.
  int restarts = 4;
  int iterations = 200;
  /// Random pure-state decompositions tried per candidate average input.
  int decompositions = 4;
  /// Fully random pure-state ensembles.
  int random_ensembles = 4;
  /// Adds random mixed-state ensembles (general channels only).
  bool mixed_states = false;
  std::uint64_t seed = 0;
  /// Budget for the eavesdropper's accessible-information lower bound.
  AccInfoOptions acc = [] {
    AccInfoOptions o;
    o.restarts = 1;
    o.iterations = 100;
    return o;
  }();
};

struct WeakLockInterval {
  double lower = 0.0;  // max over found ensembles of I(X;B) - chi(X;E)
  double upper = 0.0;  // max over found ensembles of I(X;B) - acc_lower(X;E)
  int ensembles_tried = 0;
  std::string label = "single-letter";
};

/// Single-letter (n = 1) evaluation of the weak-locking upper quantity over
/// pure-state ensembles with at most d^2 elements. Channels that admit a
/// rank-one Kraus form are first rewritten in it, which leaves I(X;E)
/// unchanged but makes the environment's standard basis the simulating
/// measurement. Throws ValidationError when the budget is zero and
/// CapabilityError for d > 16.
WeakLockInterval weak_lock_upper_single_letter(const KrausChannel& ch, const EnsembleSearchOptions& opts = {});

/// Max over ensembles (search budget) of I(X;B) - I(X;E) for a channel whose
/// environment output is diagonal on every |i><j| input. Throws
/// StructureError when that check fails.
double hadamard_weak_capacity(const KrausChannel& ch, const EnsembleSearchOptions& opts = {});

/// True when the complementary output of every |i><j| is diagonal.
bool has_classical_environment(const KrausChannel& ch, double tol = 1e-10);

/// chi(X;E) - acc_lower(X;E) for the given input ensemble.
double discord_gap(const KrausChannel& ch, const Ensemble& ens, const AccInfoOptions& opts = {});

/// max over rho of H(N(rho)) - H(N^c(rho)); returns the maximizing input too.
struct CoherentInfoResult {
  double value = 0.0;
  DensityOperator input = DensityOperator::maximally_mixed(1);
};
CoherentInfoResult max_coherent_information(const KrausChannel& ch, int restarts, int iterations,
                                            std::uint64_t seed);

}  // namespace qlock
