#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace qlock::cli {

enum ExitCode { kOk = 0, kConfigError = 2, kInvariantFailure = 3, kCapabilityError = 4 };

std::vector<std::string> subcommands();

struct RunOutput {
  nlohmann::json report;  // deterministic: no timing
  std::optional<std::string> csv;
  bool invariants_ok = true;
};

/// Runs one subcommand on an already parsed config. Throws the library's
/// ValidationError / CapabilityError for bad input.
RunOutput run_command(const std::string& command, const nlohmann::json& config, std::optional<std::uint64_t> seed_flag);

/// The module invariant suite behind --check.
RunOutput run_checks(const std::string& command, std::uint64_t seed);

/// Full command-line entry point. Writes DIR/<cmd>.json (plus .csv and
/// .timing.json) with --out, otherwise the JSON report to `out`.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// {"value": v, "method": m, "tolerance": t}; NaN and infinities become null.
nlohmann::json number(double value, const std::string& method, double tolerance);

}  // namespace qlock::cli
