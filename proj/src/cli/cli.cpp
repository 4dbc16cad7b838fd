#include "qlock/cli/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "qlock/core/parallel.hpp"
#include "qlock/core/types.hpp"

namespace qlock::cli {

using nlohmann::json;

namespace {

json read_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p);
  if (!f) throw ValidationError("cannot write " + p.string());
  f << text;
}

}  // namespace

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"qlock: data-locking simulation and capacity bounds"};
  app.require_subcommand(1);
  std::string config_path;
  std::optional<std::uint64_t> seed;
  int threads = 0;
  std::string out_dir;
  bool check = false;
  for (const auto& name : subcommands()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--seed", seed, "master seed (overrides the config)");
    sub->add_option("--threads", threads, "worker threads (0 = automatic)")->check(CLI::NonNegativeNumber);
    sub->add_option("--out", out_dir, "directory for <cmd>.json, <cmd>.csv and <cmd>.timing.json");
    sub->add_flag("--check", check, "run the built-in invariant checks for this module");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  if (threads > 0) set_thread_count(threads);

  RunOutput result;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (check) {
      result = run_checks(command, seed.value_or(0));
    } else {
      result = run_command(command, read_config(config_path), seed);
    }
  } catch (const CapabilityError& e) {
    err << "capability error: " << e.what() << "\n";
    return kCapabilityError;
  } catch (const ValidationError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const DimensionError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const StructureError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const json::exception& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const std::string text = result.report.dump(2) + "\n";
  if (out_dir.empty()) {
    out << text;
  } else {
    try {
      const std::filesystem::path dir(out_dir);
      std::filesystem::create_directories(dir);
      write_file(dir / (command + ".json"), text);
      if (result.csv) write_file(dir / (command + ".csv"), *result.csv);
      const json timing = {{"command", command}, {"wall_seconds", seconds}};
      write_file(dir / (command + ".timing.json"), timing.dump(2) + "\n");
    } catch (const std::exception& e) {
      err << "output error: " << e.what() << "\n";
      return kConfigError;
    }
  }
  if (!result.invariants_ok) {
    err << "invariant check failed\n";
    return kInvariantFailure;
  }
  return kOk;
}

}  // namespace qlock::cli
