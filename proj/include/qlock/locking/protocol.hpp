#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qlock/accinfo/accinfo.hpp"
#include "qlock/core/channel.hpp"
#include "qlock/core/ensemble.hpp"
#include "qlock/locking/scheme.hpp"

namespace qlock {

/// An (n, R, eps) protocol: encoder states rho_{m,k} on A^n (index m*|K|+k)
/// and one decoding POVM per key on B^n. Message and key are uniform.
struct LockingProtocolSpec {
  int n = 1;
  int msg_dim = 0;
  int num_keys = 0;
  std::vector<DensityOperator> encoder;
  std::vector<Povm> decoders;
  double epsilon = 0.0;

  double rate() const;
  double key_bits() const;
  const DensityOperator& encoded(int m, int k) const { return encoder[m * num_keys + k]; }
  void validate() const;
};

/// Encoder U_k|m> over n uses of a channel with per-use input dimension
/// input_dim (msg_dim must equal input_dim^n). Decoder for key k measures
/// in the columns of U_k.
LockingProtocolSpec make_protocol(const LockingScheme& scheme, int n, int input_dim);

/// Embeds every decoder into a larger output space through the isometry
/// `embed` (out_dim x msg_dim). Whatever falls outside the image is spread
/// uniformly over messages, i.e. the receiver guesses.
LockingProtocolSpec with_uniform_guessing(const LockingProtocolSpec& proto, const Matrix& embed);

/// (1/|M||K|) sum Tr[Lambda_m^(k) N^{(x)n}(rho_{m,k})].
double decode_success_probability(const LockingProtocolSpec& proto, const KrausChannel& ch);

/// Key-averaged states N^{(x)n}(rho_m) reaching the eavesdropper, uniform in m.
Ensemble eve_ensemble(const LockingProtocolSpec& proto, const KrausChannel& eve_channel);

/// Per-measurement security data for one adversary POVM.
struct SecurityFragment {
  RealMatrix joint;                         // p(m, y)
  std::vector<double> per_outcome_var_dist; // one per outcome; NaN when skipped
  std::vector<int> skipped_outcomes;        // p_Y(y) <= 1e-12
  double max_var_dist = 0.0;
  double mutual_info_bits = 0.0;
};

SecurityFragment eve_security_eval(const LockingProtocolSpec& proto, const KrausChannel& eve_channel,
                                   const Povm& adversary);

/// Same, starting from an already computed eavesdropper ensemble.
SecurityFragment security_of_measurement(const Ensemble& eve, const Povm& adversary);

struct Ratios {
  std::optional<double> r1;
  std::optional<double> r2;
  std::string note;
};

/// r1 = without/with, r2 = key_bits/(with - without); empty when the
/// denominator is not positive.
Ratios ratios_r1_r2(double acc_without_key, double acc_with_key, double key_bits);

enum class LockingMode { Weak, Strong };

struct SecurityReport {
  LockingMode mode = LockingMode::Strong;
  double success_prob = 0.0;
  std::vector<double> per_outcome_var_dist;  // of the adversary with the largest distance
  double max_var_dist = 0.0;
  std::string max_var_dist_adversary;
  double fa_acc_bound_bits = 0.0;
  double with_key_bits = 0.0;  // receiver's decoded mutual information with the key
  double without_key_bits = 0.0;
  Ratios ratios;
  double key_bits = 0.0;
  int n = 1;
  double rate = 0.0;
  AdversarySuiteReport suite;
  std::vector<int> skipped_outcomes;
};

/// Weak mode hands the eavesdropper the complementary channel; strong mode
/// the identity on A^n. The adversary suite also contains "guess key k"
/// measurements in the columns of each U_k when dimensions allow.
SecurityReport evaluate_protocol(const LockingProtocolSpec& proto, const KrausChannel& ch, LockingMode mode,
                                 const AccInfoOptions& opts, const LockingScheme* scheme = nullptr);

/// Receiver's I(M; decoder output | K) averaged over keys (key known).
double decoded_mutual_info(const LockingProtocolSpec& proto, const KrausChannel& ch);

/// h2(min(eps/2, 1)) + eps*n*R/2.
double fannes_audenaert_acc_bound(double epsilon, int n, double rate);

/// Joint distribution p(m, y, k), flattened with index (m*Y + y)*K + k.
struct JointMYK {
  int m = 0, y = 0, k = 0;
  std::vector<double> p;
  double at(int mi, int yi, int ki) const { return p[(static_cast<size_t>(mi) * y + yi) * k + ki]; }
};

struct ClassicalInequalityResult {
  bool holds = false;
  double gain_bits = 0.0;  // I(M;YK) - I(M;Y)
  double slack = 0.0;      // log2|K| - gain
};

ClassicalInequalityResult classical_inequality_check(const JointMYK& joint);

/// eps1 + eps2.
double parallel_compose_security(double eps1, double eps2);

/// (gamma n) log2(d_E^n) + h2(min(gamma n, 1)).
double composed_acc_bound(double gamma, int n, int env_dim);

/// 4 log2(1/eps) + c_loglog log2 log2(1/eps); reporting only.
double fhs_key_length(double epsilon, double c_loglog = 1.0);

}  // namespace qlock
