#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qlock/core/density.hpp"
#include "qlock/core/ensemble.hpp"
#include "qlock/core/types.hpp"

namespace qlock {

/// Message basis (standard) plus |K| key unitaries on the message space.
/// Message m under key k is encoded as U_k|m>, i.e. column m of U_k.
class LockingScheme {
 public:
  explicit LockingScheme(std::vector<Matrix> key_unitaries);

  /// |K| Haar unitaries drawn from one seeded stream.
  static LockingScheme haar(int msg_dim, int num_keys, std::uint64_t seed);

  int msg_dim() const { return static_cast<int>(keys_.front().rows()); }
  int num_keys() const { return static_cast<int>(keys_.size()); }
  double key_bits() const;
  const std::vector<Matrix>& key_unitaries() const { return keys_; }
  const Matrix& key(int k) const { return keys_[k]; }

  Vector encoded_vector(int m, int k) const { return keys_[k].col(m); }
  DensityOperator encoded_state(int m, int k) const;

  /// Seed the unitaries were generated from, if any.
  std::optional<std::uint64_t> haar_seed() const { return seed_; }

 private:
  std::vector<Matrix> keys_;
  std::optional<std::uint64_t> seed_;
};

/// rho_MKQ for a uniform message and key, kept in classical-quantum form:
/// label m*|K| + k carries probability 1/(|M||K|) and state U_k|m><m|U_k^dagger.
struct CqState {
  int msg_dim = 0;
  int num_keys = 0;
  std::vector<double> probs;
  std::vector<DensityOperator> states;

  const DensityOperator& state(int m, int k) const { return states[m * num_keys + k]; }

  /// Ensemble labelled by (m, k).
  Ensemble labelled_ensemble() const;

  /// Reduced state on Q.
  DensityOperator q_marginal() const;

  /// Dense matrix on M (x) K (x) Q; CapabilityError above 256 dimensions.
  DensityOperator dense() const;
};

/// Throws CapabilityError when |M||K| > 4096.
CqState cq_state_with_key(const LockingScheme& scheme);

/// rho_MQ: uniform ensemble over m of the key-averaged states.
Ensemble cq_state_without_key(const LockingScheme& scheme);

/// I(M;KQ) = I(M;K) + sum_k p(k) chi({p(m|k), rho_mk}). Exact for cq states.
double mutual_info_m_kq(const CqState& cq);

/// Versioned JSON text. With explicit_matrices the unitaries are written as
/// interleaved (re, im) row-major arrays; otherwise a Haar seed is written,
/// which requires the scheme to have one.
std::string serialize_scheme(const LockingScheme& scheme, bool explicit_matrices);
LockingScheme parse_scheme(const std::string& text);

}  // namespace qlock
