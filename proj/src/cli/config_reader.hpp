#pragma once

#include <set>
#include <string>

#include <json.hpp>

#include "qlock/core/types.hpp"

namespace qlock::cli {

// Typed access to a config object that rejects keys nobody asked for.
class ConfigReader {
 public:
  ConfigReader(const nlohmann::json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw ValidationError(where_ + " must be a JSON object");
  }

  template <typename T>
  T get(const std::string& key, T fallback) {
    used_.insert(key);
    if (!j_.contains(key)) return fallback;
    try {
      return j_.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
      throw ValidationError(where_ + "." + key + " has the wrong type");
    }
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  const nlohmann::json& sub(const std::string& key) {
    used_.insert(key);
    return j_.at(key);
  }

  void finish() const {
    for (const auto& [k, v] : j_.items()) {
      if (!used_.count(k)) throw ValidationError("unknown config key: " + where_ + "." + k);
    }
  }

 private:
  const nlohmann::json& j_;
  std::string where_;
  std::set<std::string> used_;
};

}  // namespace qlock::cli
