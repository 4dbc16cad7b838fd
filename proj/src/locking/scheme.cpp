#include "qlock/locking/scheme.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "qlock/accinfo/accinfo.hpp"
#include "qlock/core/entropy.hpp"
#include "qlock/core/linalg.hpp"
#include "qlock/core/random.hpp"

namespace qlock {

LockingScheme::LockingScheme(std::vector<Matrix> key_unitaries) : keys_(std::move(key_unitaries)) {
  if (keys_.empty()) throw ValidationError("a locking scheme needs at least one key");
  const auto d = keys_.front().rows();
  if (d < 1) throw ValidationError("message dimension must be positive");
  if (d > kMaxDim) throw CapabilityError("message dimension exceeds supported maximum");
  for (const auto& u : keys_) {
    if (u.rows() != d || u.cols() != d) throw DimensionError("key unitaries have different shapes");
    const double err = isometry_error(u);
    if (err > tol::kUnitary) {
      std::ostringstream os;
      os << "key operator is not unitary (deviation " << err << ")";
      throw ValidationError(os.str());
    }
  }
}

LockingScheme LockingScheme::haar(int msg_dim, int num_keys, std::uint64_t seed) {
  if (num_keys < 1) throw ValidationError("a locking scheme needs at least one key");
  Rng rng(seed);
  std::vector<Matrix> keys;
  keys.reserve(num_keys);
  for (int k = 0; k < num_keys; ++k) keys.push_back(haar_unitary(msg_dim, rng));
  LockingScheme s(std::move(keys));
  s.seed_ = seed;
  return s;
}

double LockingScheme::key_bits() const { return std::log2(static_cast<double>(num_keys())); }

DensityOperator LockingScheme::encoded_state(int m, int k) const { return DensityOperator::pure(encoded_vector(m, k)); }

Ensemble CqState::labelled_ensemble() const { return Ensemble(probs, states); }

DensityOperator CqState::q_marginal() const { return labelled_ensemble().average(); }

DensityOperator CqState::dense() const {
  const int dq = states.front().dim();
  const long total = static_cast<long>(msg_dim) * num_keys * dq;
  if (total > kMaxDim) throw CapabilityError("dense cq state exceeds supported dimension");
  const int n = static_cast<int>(total);
  Matrix m = Matrix::Zero(n, n);
  for (int a = 0; a < msg_dim; ++a) {
    for (int k = 0; k < num_keys; ++k) {
      const int block = (a * num_keys + k) * dq;
      m.block(block, block, dq, dq) = probs[a * num_keys + k] * state(a, k).matrix();
    }
  }
  return DensityOperator::from_matrix(m);
}

CqState cq_state_with_key(const LockingScheme& scheme) {
  const long labels = static_cast<long>(scheme.msg_dim()) * scheme.num_keys();
  if (labels > 4096) throw CapabilityError("|M||K| exceeds 4096");
  CqState cq;
  cq.msg_dim = scheme.msg_dim();
  cq.num_keys = scheme.num_keys();
  cq.probs.assign(static_cast<size_t>(labels), 1.0 / static_cast<double>(labels));
  cq.states.reserve(static_cast<size_t>(labels));
  for (int m = 0; m < cq.msg_dim; ++m) {
    for (int k = 0; k < cq.num_keys; ++k) cq.states.push_back(scheme.encoded_state(m, k));
  }
  return cq;
}

Ensemble cq_state_without_key(const LockingScheme& scheme) {
  const long labels = static_cast<long>(scheme.msg_dim()) * scheme.num_keys();
  if (labels > 4096) throw CapabilityError("|M||K| exceeds 4096");
  const int d = scheme.msg_dim();
  std::vector<DensityOperator> states;
  states.reserve(d);
  for (int m = 0; m < d; ++m) {
    Matrix r = Matrix::Zero(d, d);
    for (const auto& u : scheme.key_unitaries()) r.noalias() += u.col(m) * u.col(m).adjoint();
    r /= static_cast<double>(scheme.num_keys());
    states.push_back(DensityOperator::from_matrix(hermitian_part(r)));
  }
  return Ensemble::uniform(std::move(states));
}

double mutual_info_m_kq(const CqState& cq) {
  RealMatrix pmk(cq.msg_dim, cq.num_keys);
  for (int m = 0; m < cq.msg_dim; ++m) {
    for (int k = 0; k < cq.num_keys; ++k) pmk(m, k) = cq.probs[m * cq.num_keys + k];
  }
  double total = mutual_information(pmk);
  for (int k = 0; k < cq.num_keys; ++k) {
    const double pk = pmk.col(k).sum();
    if (pk <= 0.0) continue;
    std::vector<double> cond;
    std::vector<DensityOperator> st;
    for (int m = 0; m < cq.msg_dim; ++m) {
      cond.push_back(pmk(m, k) / pk);
      st.push_back(cq.state(m, k));
    }
    total += pk * holevo_chi(Ensemble(std::move(cond), std::move(st)));
  }
  return total;
}

std::string serialize_scheme(const LockingScheme& scheme, bool explicit_matrices) {
  nlohmann::ordered_json j;
  j["format"] = "qlock-scheme";
  j["version"] = 1;
  j["msg_dim"] = scheme.msg_dim();
  j["num_keys"] = scheme.num_keys();
  if (explicit_matrices || !scheme.haar_seed()) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& u : scheme.key_unitaries()) arr.push_back(interleave(u));
    j["generator"] = {{"kind", "explicit"}, {"unitaries", arr}};
  } else {
    j["generator"] = {{"kind", "haar"}, {"seed", *scheme.haar_seed()}};
  }
  return j.dump(2);
}

LockingScheme parse_scheme(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("scheme text is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "qlock-scheme") throw ValidationError("unknown scheme format");
    if (j.at("version").get<int>() != 1) throw ValidationError("unsupported scheme version");
    const int d = j.at("msg_dim").get<int>();
    const int nk = j.at("num_keys").get<int>();
    const auto& g = j.at("generator");
    const std::string kind = g.at("kind").get<std::string>();
    if (kind == "haar") return LockingScheme::haar(d, nk, g.at("seed").get<std::uint64_t>());
    if (kind != "explicit") throw ValidationError("unknown scheme generator " + kind);
    const auto& arr = g.at("unitaries");
    if (static_cast<int>(arr.size()) != nk) throw ValidationError("num_keys does not match unitary list");
    std::vector<Matrix> keys;
    for (const auto& a : arr) {
      const auto flat = a.get<std::vector<double>>();
      keys.push_back(deinterleave(flat, d, d));
    }
    return LockingScheme(std::move(keys));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed scheme: ") + e.what());
  }
}

}  // namespace qlock
