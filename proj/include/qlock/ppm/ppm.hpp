#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qlock/accinfo/accinfo.hpp"
#include "qlock/core/channel.hpp"
#include "qlock/locking/scheme.hpp"

namespace qlock {

struct PpmConfig {
  int n_modes = 16;
  double eta = 1.0;
  int num_keys = 1;
  cplx alpha = 0.0;  // coherent variant only
  long trials = 100000;
  std::uint64_t rng_seed = 0;
  /// Also run the adversary suite on one block (small n only).
  bool adversary_suite = false;

  void validate() const;
};

struct PpmReport {
  double throughput_bits_per_block = 0.0;
  double throughput_stderr = 0.0;
  double resend_rate = 0.0;
  double expected_throughput = 0.0;  // eta log2 n
  double decode_success_probability = 0.0;  // one block, receiver guesses on no click
  std::optional<double> r2_estimate;  // at epsilon = 1/2 when eta > 0
  long trials = 0;
  /// The eavesdropper is assumed to attack every block on its own.
  bool independent_block_attacks = true;
  std::optional<AdversarySuiteReport> suite;
};

/// Haar keys on the single-photon subspace of n modes (mode matrix acting on
/// the labels). Encoded state for (m, k) is column m of U_k. n <= 64.
LockingScheme single_photon_scheme(int n_modes, int num_keys, std::uint64_t seed);

/// Pure loss restricted to at most one photon: input n single-photon states,
/// output vacuum (index 0) plus the n single-photon states.
KrausChannel single_photon_loss(int n_modes, double eta);

/// Click/no-click Monte Carlo with resend on no click. Trials run in chunks
/// of 8192, chunk c drawing from stream c of the seed.
PpmReport lossy_feedback_simulate(const PpmConfig& cfg);

/// 4 log2(1/eps) / (eta log2 n). n is a double so 2^32 and beyond fit.
double ppm_r2_estimate(double eta, double n, double epsilon);

/// Coherent PPM on vacuum (+) single photon (+) remainder |R>:
///   psi_{m,k} = e^{-N/2}(|0> + alpha U_k e_m) + sqrt(1 - e^{-N}(1+N)) |R>,
/// index 0 vacuum, 1..n single photon, n+1 remainder.
class CoherentPpmScheme {
 public:
  CoherentPpmScheme(int n_modes, cplx alpha, int num_keys, std::uint64_t seed);

  int n_modes() const { return keys_.msg_dim(); }
  int num_keys() const { return keys_.num_keys(); }
  int dim() const { return n_modes() + 2; }
  cplx alpha() const { return alpha_; }
  double n_tot() const { return std::norm(alpha_); }
  const LockingScheme& mode_keys() const { return keys_; }

  Vector encoded_vector(int m, int k) const;
  /// Weights of the vacuum, single-photon and remainder sectors (sum to 1).
  std::vector<double> sector_norms() const;
  /// Mass outside vacuum and single photon in the untruncated coherent state.
  double truncation_error() const;

  /// Ensemble labelled by (m, k), index m*|K| + k.
  Ensemble labelled_ensemble() const;
  /// Key-averaged states, uniform in m.
  Ensemble message_ensemble() const;

 private:
  LockingScheme keys_;
  cplx alpha_;
};

/// Rank-one POVM on the single-photon sector chosen by the accessible
/// information optimizer against the key-averaged single-photon states.
Povm single_photon_sector_povm(const LockingScheme& scheme, const AccInfoOptions& opts);

/// Vacuum projector, the embedded optimized single-photon POVM, and the
/// remainder projector. Commutes with the total photon number.
Povm photon_number_adversary(const CoherentPpmScheme& scheme, const AccInfoOptions& opts);

struct INumEstimate {
  double value = 0.0;       // N_tot * bracket
  double bracket = 0.0;     // optimized I(MK;Y) on the single-photon sector
  double remainder_bound = 0.0;  // N_tot^2 log2 n
  std::string bracket_method;
};

INumEstimate i_num_estimate(const CoherentPpmScheme& scheme, const AccInfoOptions& opts);

struct KeyEfficiency {
  bool inside = false;
  double lower = 0.0;        // 4 log2(1/eps) / log2 n
  double lower_margin = 0.0; // N_tot - lower
  double upper_margin = 0.0; // threshold - N_tot
};

/// threshold >= N_tot > 4 log2(1/eps)/log2 n.
KeyEfficiency key_efficiency_region(double n_tot, double epsilon, double n, double threshold = 0.1);

}  // namespace qlock
