#include "qlock/locking/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qlock/core/entropy.hpp"
#include "qlock/core/linalg.hpp"

namespace qlock {

double LockingProtocolSpec::rate() const { return std::log2(static_cast<double>(msg_dim)) / n; }

double LockingProtocolSpec::key_bits() const { return std::log2(static_cast<double>(num_keys)); }

void LockingProtocolSpec::validate() const {
  if (n < 1 || msg_dim < 1 || num_keys < 1) throw ValidationError("protocol needs n, |M|, |K| >= 1");
  if (static_cast<long>(encoder.size()) != static_cast<long>(msg_dim) * num_keys) {
    throw ValidationError("encoder family must cover every (m, k)");
  }
  if (static_cast<int>(decoders.size()) != num_keys) throw ValidationError("need one decoding POVM per key");
  for (const auto& d : decoders) {
    if (d.size() != msg_dim) throw ValidationError("decoder must have one outcome per message");
  }
}

LockingProtocolSpec make_protocol(const LockingScheme& scheme, int n, int input_dim) {
  long total = 1;
  for (int i = 0; i < n; ++i) total *= input_dim;
  if (n < 1 || total != scheme.msg_dim()) throw DimensionError("message dimension must equal input_dim^n");
  LockingProtocolSpec p;
  p.n = n;
  p.msg_dim = scheme.msg_dim();
  p.num_keys = scheme.num_keys();
  for (int m = 0; m < p.msg_dim; ++m) {
    for (int k = 0; k < p.num_keys; ++k) p.encoder.push_back(scheme.encoded_state(m, k));
  }
  for (const auto& u : scheme.key_unitaries()) p.decoders.push_back(Povm::from_unitary_columns(u));
  return p;
}

LockingProtocolSpec with_uniform_guessing(const LockingProtocolSpec& proto, const Matrix& embed) {
  if (embed.cols() != proto.decoders.front().dim()) throw DimensionError("embedding does not start at the decoder space");
  if (isometry_error(embed) > tol::kUnitary) throw ValidationError("embedding is not an isometry");
  const auto out = embed.rows();
  const Matrix rest = (Matrix::Identity(out, out) - embed * embed.adjoint()) / static_cast<double>(proto.msg_dim);
  LockingProtocolSpec p = proto;
  p.decoders.clear();
  for (const auto& d : proto.decoders) {
    std::vector<Matrix> el;
    for (const auto& e : d.elements()) el.push_back(embed * e * embed.adjoint() + rest);
    p.decoders.emplace_back(std::move(el));
  }
  return p;
}

namespace {

KrausChannel uses(const KrausChannel& ch, int n) { return n == 1 ? ch : tensor_power(ch, n); }

}  // namespace

double decode_success_probability(const LockingProtocolSpec& proto, const KrausChannel& ch) {
  proto.validate();
  const KrausChannel big = uses(ch, proto.n);
  if (big.in_dim() != proto.encoder.front().dim()) throw DimensionError("channel input does not match encoder");
  if (big.out_dim() != proto.decoders.front().dim()) throw DimensionError("channel output does not match decoder");
  double s = 0.0;
  for (int m = 0; m < proto.msg_dim; ++m) {
    for (int k = 0; k < proto.num_keys; ++k) {
      const Matrix out = big.apply(proto.encoded(m, k).matrix());
      s += proto.decoders[k].probabilities(out)[m];
    }
  }
  const double p = s / (static_cast<double>(proto.msg_dim) * proto.num_keys);
  return std::clamp(p, 0.0, 1.0);
}

double decoded_mutual_info(const LockingProtocolSpec& proto, const KrausChannel& ch) {
  proto.validate();
  const KrausChannel big = uses(ch, proto.n);
  double acc = 0.0;
  for (int k = 0; k < proto.num_keys; ++k) {
    RealMatrix joint(proto.msg_dim, proto.msg_dim);
    for (int m = 0; m < proto.msg_dim; ++m) {
      const auto p = proto.decoders[k].probabilities(big.apply(proto.encoded(m, k).matrix()));
      for (int y = 0; y < proto.msg_dim; ++y) joint(m, y) = p[y] / proto.msg_dim;
    }
    acc += mutual_information(joint / joint.sum());
  }
  return acc / proto.num_keys;
}

Ensemble eve_ensemble(const LockingProtocolSpec& proto, const KrausChannel& eve_channel) {
  proto.validate();
  const KrausChannel big = uses(eve_channel, proto.n);
  if (big.in_dim() != proto.encoder.front().dim()) throw DimensionError("eavesdropper channel does not match encoder");
  std::vector<DensityOperator> states;
  for (int m = 0; m < proto.msg_dim; ++m) {
    Matrix r = Matrix::Zero(big.out_dim(), big.out_dim());
    for (int k = 0; k < proto.num_keys; ++k) r += big.apply(proto.encoded(m, k).matrix());
    r /= static_cast<double>(proto.num_keys);
    states.push_back(DensityOperator::from_matrix(hermitian_part(r)));
  }
  return Ensemble::uniform(std::move(states));
}

SecurityFragment security_of_measurement(const Ensemble& eve, const Povm& adversary) {
  SecurityFragment f;
  f.joint = joint_distribution(eve, adversary);
  f.joint /= f.joint.sum();
  const RealVector pm = f.joint.rowwise().sum();
  for (Eigen::Index y = 0; y < f.joint.cols(); ++y) {
    const double py = f.joint.col(y).sum();
    if (py <= 1e-12) {
      f.per_outcome_var_dist.push_back(std::numeric_limits<double>::quiet_NaN());
      f.skipped_outcomes.push_back(static_cast<int>(y));
      continue;
    }
    const double d = (pm - f.joint.col(y) / py).cwiseAbs().sum();
    f.per_outcome_var_dist.push_back(d);
    f.max_var_dist = std::max(f.max_var_dist, d);
  }
  f.mutual_info_bits = std::max(0.0, mutual_information(f.joint));
  return f;
}

SecurityFragment eve_security_eval(const LockingProtocolSpec& proto, const KrausChannel& eve_channel,
                                   const Povm& adversary) {
  return security_of_measurement(eve_ensemble(proto, eve_channel), adversary);
}

Ratios ratios_r1_r2(double acc_without_key, double acc_with_key, double key_bits) {
  Ratios r;
  if (acc_with_key > 0.0) {
    r.r1 = acc_without_key / acc_with_key;
  } else {
    r.note = "r1 undefined: no information with the key";
  }
  const double gap = acc_with_key - acc_without_key;
  if (gap > 1e-12) {
    r.r2 = key_bits / gap;
  } else {
    if (!r.note.empty()) r.note += "; ";
    r.note += "r2 undefined: key unlocks no information";
  }
  return r;
}

SecurityReport evaluate_protocol(const LockingProtocolSpec& proto, const KrausChannel& ch, LockingMode mode,
                                 const AccInfoOptions& opts, const LockingScheme* scheme) {
  SecurityReport rep;
  rep.mode = mode;
  rep.n = proto.n;
  rep.rate = proto.rate();
  rep.key_bits = proto.key_bits();
  rep.success_prob = decode_success_probability(proto, ch);
  rep.with_key_bits = decoded_mutual_info(proto, ch);

  const KrausChannel eve_ch = mode == LockingMode::Weak ? complementary_channel(ch) : identity_channel(ch.in_dim());
  const Ensemble eve = eve_ensemble(proto, eve_ch);

  std::vector<std::pair<std::string, Povm>> extras;
  if (scheme != nullptr && scheme->msg_dim() == eve.dim()) {
    const int kmax = std::min(scheme->num_keys(), 16);
    for (int k = 0; k < kmax; ++k) {
      extras.emplace_back("key_basis_" + std::to_string(k), Povm::from_unitary_columns(scheme->key(k)));
    }
  }
  rep.suite = run_adversary_suite(eve, opts, extras);
  rep.without_key_bits = rep.suite.best_bits;

  std::vector<std::pair<std::string, Povm>> measured = {
      {"standard_basis", Povm::standard_basis(eve.dim())},
      {"fourier_basis", Povm::fourier_basis(eve.dim())},
      {"pretty_good", pretty_good_measurement(eve)},
  };
  for (auto& e : extras) measured.push_back(std::move(e));
  measured.emplace_back("optimized_rank1", rep.suite.optimized.achieving_povm);
  rep.max_var_dist = -1.0;
  for (const auto& [name, pv] : measured) {
    SecurityFragment f = security_of_measurement(eve, pv);
    if (f.max_var_dist > rep.max_var_dist) {
      rep.max_var_dist = f.max_var_dist;
      rep.max_var_dist_adversary = name;
      rep.per_outcome_var_dist = f.per_outcome_var_dist;
      rep.skipped_outcomes = f.skipped_outcomes;
    }
  }
  rep.fa_acc_bound_bits = fannes_audenaert_acc_bound(std::min(rep.max_var_dist, 2.0), proto.n, rep.rate);
  rep.ratios = ratios_r1_r2(rep.without_key_bits, rep.with_key_bits, rep.key_bits);
  return rep;
}

double fannes_audenaert_acc_bound(double epsilon, int n, double rate) {
  if (!(epsilon >= 0.0 && epsilon <= 2.0)) throw ValidationError("epsilon must lie in [0, 2]");
  return binary_entropy(std::min(epsilon / 2.0, 1.0)) + epsilon * n * rate / 2.0;
}

ClassicalInequalityResult classical_inequality_check(const JointMYK& joint) {
  if (joint.m < 1 || joint.y < 1 || joint.k < 1 ||
      joint.p.size() != static_cast<size_t>(joint.m) * joint.y * joint.k) {
    throw DimensionError("joint distribution size does not match (M, Y, K)");
  }
  RealMatrix m_yk(joint.m, joint.y * joint.k);
  RealMatrix m_y = RealMatrix::Zero(joint.m, joint.y);
  for (int a = 0; a < joint.m; ++a) {
    for (int b = 0; b < joint.y; ++b) {
      for (int c = 0; c < joint.k; ++c) {
        const double v = joint.at(a, b, c);
        m_yk(a, b * joint.k + c) = v;
        m_y(a, b) += v;
      }
    }
  }
  ClassicalInequalityResult r;
  r.gain_bits = mutual_information(m_yk) - mutual_information(m_y);
  r.slack = std::log2(static_cast<double>(joint.k)) - r.gain_bits;
  r.holds = r.slack >= -1e-9;
  return r;
}

double parallel_compose_security(double eps1, double eps2) {
  if (eps1 < 0.0 || eps2 < 0.0) throw ValidationError("security parameters must be nonnegative");
  return eps1 + eps2;
}

double composed_acc_bound(double gamma, int n, int env_dim) {
  if (gamma < 0.0 || n < 1 || env_dim < 1) throw ValidationError("invalid composition parameters");
  const double g = gamma * n;
  return g * n * std::log2(static_cast<double>(env_dim)) + binary_entropy(std::min(g, 1.0));
}

double fhs_key_length(double epsilon, double c_loglog) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ValidationError("FHS key length needs 0 < eps < 1");
  const double l = std::log2(1.0 / epsilon);
  return 4.0 * l + c_loglog * std::log2(l);
}

}  // namespace qlock
