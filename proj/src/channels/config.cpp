#include "qlock/channels/config.hpp"

#include <set>
#include <string>

#include "qlock/channels/eb.hpp"
#include "qlock/channels/zoo.hpp"
#include "qlock/core/linalg.hpp"
#include "qlock/core/random.hpp"

namespace qlock {

namespace {

void only_keys(const nlohmann::json& cfg, const std::set<std::string>& allowed) {
  for (const auto& [k, v] : cfg.items()) {
    if (!allowed.count(k)) throw ValidationError("unknown channel config key: " + k);
  }
}

template <typename T>
T get(const nlohmann::json& cfg, const char* key) {
  if (!cfg.contains(key)) throw ValidationError(std::string("channel config missing key: ") + key);
  try {
    return cfg.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ValidationError(std::string("channel config key has wrong type: ") + key);
  }
}

double prob_param(const nlohmann::json& cfg, const char* key) {
  const double p = get<double>(cfg, key);
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError(std::string(key) + " must lie in [0, 1]");
  return p;
}

int dim_param(const nlohmann::json& cfg, const char* key) {
  const int d = get<int>(cfg, key);
  if (d < 1) throw ValidationError(std::string(key) + " must be positive");
  if (d > kMaxDim) throw CapabilityError(std::string(key) + " exceeds supported dimension");
  return d;
}

}  // namespace

KrausChannel channel_from_config(const nlohmann::json& cfg) {
  if (!cfg.is_object()) throw ValidationError("channel config must be an object");
  if (cfg.contains("kraus")) {
    only_keys(cfg, {"kraus", "in_dim", "out_dim"});
    const int din = dim_param(cfg, "in_dim");
    const int dout = dim_param(cfg, "out_dim");
    const auto arrays = get<std::vector<std::vector<double>>>(cfg, "kraus");
    if (arrays.empty()) throw ValidationError("kraus list is empty");
    std::vector<Matrix> ops;
    try {
      for (const auto& a : arrays) ops.push_back(deinterleave(a, dout, din));
    } catch (const DimensionError& e) {
      throw ValidationError(e.what());
    }
    return KrausChannel(std::move(ops));
  }
  const std::string name = get<std::string>(cfg, "name");
  if (name == "identity") {
    only_keys(cfg, {"name", "d"});
    return identity_channel(dim_param(cfg, "d"));
  }
  if (name == "depolarizing" || name == "erasure" || name == "dephasing") {
    only_keys(cfg, {"name", "d", "p"});
    const int d = dim_param(cfg, "d");
    const double p = prob_param(cfg, "p");
    if (name == "depolarizing") return depolarizing(d, p);
    if (name == "erasure") return erasure(d, p);
    return dephasing(d, p);
  }
  if (name == "amplitude_damping") {
    only_keys(cfg, {"name", "gamma"});
    return amplitude_damping(prob_param(cfg, "gamma"));
  }
  if (name == "constant_mixed") {
    only_keys(cfg, {"name", "d", "out_dim"});
    const int d = dim_param(cfg, "d");
    const int o = cfg.contains("out_dim") ? dim_param(cfg, "out_dim") : d;
    return constant_channel(d, DensityOperator::maximally_mixed(o));
  }
  if (name == "qubit_depolarizing_eb_form") {
    only_keys(cfg, {"name", "p"});
    try {
      return qubit_depolarizing_eb_form(prob_param(cfg, "p"));
    } catch (const StructureError& e) {
      throw ValidationError(e.what());
    }
  }
  if (name == "random" || name == "random_measure_prepare") {
    only_keys(cfg, {"name", "in_dim", "out_dim", "num_kraus", "outcomes", "seed"});
    const int din = dim_param(cfg, "in_dim");
    const int dout = dim_param(cfg, "out_dim");
    Rng rng(cfg.contains("seed") ? get<std::uint64_t>(cfg, "seed") : 0);
    if (name == "random") {
      if (cfg.contains("outcomes")) throw ValidationError("unknown channel config key: outcomes");
      return random_channel(din, dout, cfg.contains("num_kraus") ? dim_param(cfg, "num_kraus") : din * dout, rng);
    }
    if (cfg.contains("num_kraus")) throw ValidationError("unknown channel config key: num_kraus");
    return random_measure_prepare(din, dout, cfg.contains("outcomes") ? dim_param(cfg, "outcomes") : din, rng);
  }
  throw ValidationError("unknown channel name: " + name);
}

}  // namespace qlock
