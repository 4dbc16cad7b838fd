#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "qlock/cli/cli.hpp"
#include "qlock/core/types.hpp"

using namespace qlock;
using namespace qlock::cli;
using nlohmann::json;

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation run(std::vector<std::string> args) {
  args.insert(args.begin(), "qlock");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_config(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / ("qlock_test_" + name + ".json");
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST(Cli, HelpAndBadArguments) {
  EXPECT_EQ(run({"--help"}).code, kOk);
  EXPECT_EQ(run({}).code, kConfigError);
  EXPECT_EQ(run({"no-such-command"}).code, kConfigError);
  EXPECT_EQ(run({"accinfo", "--seed", "abc"}).code, kConfigError);
  EXPECT_EQ(run({"accinfo", "--threads", "-2"}).code, kConfigError);
}

TEST(Cli, UnknownConfigKeyIsRejected) {
  const Invocation r = run({"accinfo", "--config", temp_config("unknown", R"({"random_dim": 2, "bogus": 1})")});
  EXPECT_EQ(r.code, kConfigError);
  EXPECT_NE(r.err.find("bogus"), std::string::npos);
  EXPECT_EQ(run({"ppm-sim", "--config", temp_config("nested", R"({"trials": 100, "coherent": {"zzz": 1}})")}).code,
            kConfigError);
}

TEST(Cli, MalformedOrMissingConfig) {
  EXPECT_EQ(run({"accinfo", "--config", temp_config("broken", "{not json")}).code, kConfigError);
  EXPECT_EQ(run({"accinfo", "--config", "/nonexistent/qlock.json"}).code, kConfigError);
  EXPECT_EQ(run({"accinfo", "--config", temp_config("wrongtype", R"({"random_dim": "two"})")}).code, kConfigError);
  EXPECT_EQ(run({"ppm-sim", "--config", temp_config("eta", R"({"eta": 1.5, "trials": 10})")}).code, kConfigError);
}

TEST(Cli, CapabilityLimitsExitFour) {
  EXPECT_EQ(run({"accinfo", "--config", temp_config("bigdim", R"({"random_dim": 500})")}).code, kCapabilityError);
  EXPECT_EQ(run({"lock-sim", "--config", temp_config("bigmsg", R"({"msg_dim": 128})")}).code, kCapabilityError);
}

TEST(Cli, SameSeedSameReport) {
  const std::string cfg = temp_config("det", R"({"random_dim": 3, "random_size": 4, "restarts": 2, "iterations": 60})");
  const Invocation a = run({"accinfo", "--config", cfg, "--seed", "11"});
  const Invocation b = run({"accinfo", "--config", cfg, "--seed", "11", "--threads", "1"});
  ASSERT_EQ(a.code, kOk);
  EXPECT_EQ(a.out, b.out);
  const Invocation c = run({"accinfo", "--config", cfg, "--seed", "12"});
  EXPECT_NE(a.out, c.out);
  const json j = json::parse(a.out);
  EXPECT_EQ(j["seed"]["value"], 11u);
  EXPECT_EQ(j["seed"]["source"], "flag");
  EXPECT_TRUE(j["invariants_ok"].get<bool>());
}

TEST(Cli, SeedFlagOverridesConfig) {
  const std::string with_seed = temp_config("seeded", R"({"random_dim": 2, "seed": 5, "restarts": 1, "iterations": 40})");
  const std::string without = temp_config("unseeded", R"({"random_dim": 2, "restarts": 1, "iterations": 40})");
  const json from_cfg = json::parse(run({"accinfo", "--config", with_seed}).out);
  EXPECT_EQ(from_cfg["seed"]["source"], "config");
  const json from_flag = json::parse(run({"accinfo", "--config", without, "--seed", "5"}).out);
  EXPECT_EQ(from_cfg["results"], from_flag["results"]);
  const json over = json::parse(run({"accinfo", "--config", with_seed, "--seed", "6"}).out);
  EXPECT_EQ(over["seed"]["value"], 6u);
}

TEST(Cli, NumbersCarryMethodAndTolerance) {
  const json j = json::parse(run({"eb-check"}).out);
  const json& v = j["results"]["min_pt_eigenvalue"];
  EXPECT_TRUE(v.contains("value"));
  EXPECT_TRUE(v.contains("method"));
  EXPECT_TRUE(v.contains("tolerance"));
  EXPECT_EQ(j["results"]["weak_lock_upper"]["label"], "single-letter");
  EXPECT_TRUE(number(std::nan(""), "x", 0.0)["value"].is_null());
}

TEST(Cli, OutDirectoryFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "qlock_cli_out";
  std::filesystem::remove_all(dir);
  const std::string cfg = temp_config("sweep", R"({"points": 5, "etas": [1.0, 0.5], "wehrl_thermal": [1.0]})");
  const Invocation r = run({"bosonic-bounds", "--config", cfg, "--out", dir.string()});
  ASSERT_EQ(r.code, kOk);
  EXPECT_TRUE(r.out.empty());
  EXPECT_TRUE(std::filesystem::exists(dir / "bosonic-bounds.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "bosonic-bounds.timing.json"));
  std::ifstream csv(dir / "bosonic-bounds.csv");
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "parameter,eta,exact,expansion,bound,private_capacity,weak_bound");
  int rows = 0;
  for (std::string line; std::getline(csv, line);) ++rows;
  EXPECT_EQ(rows, 10);
  // Timing lives in the sidecar only.
  std::ifstream rep(dir / "bosonic-bounds.json");
  const json j = json::parse(rep);
  EXPECT_FALSE(j.dump().find("seconds") != std::string::npos);
}

TEST(Cli, CheckSuitesPass) {
  for (const auto& c : subcommands()) {
    const Invocation r = run({c, "--check", "--seed", "3"});
    EXPECT_EQ(r.code, kOk) << c << "\n" << r.out;
  }
}

TEST(Cli, SubcommandsRunWithDefaults) {
  for (const auto& c : {"wiretap", "ppm-sim", "accinfo"}) {
    const Invocation r = run({c});
    EXPECT_EQ(r.code, kOk) << c << r.err;
    EXPECT_EQ(json::parse(r.out)["command"], c);
  }
  const Invocation lock = run({"lock-sim", "--config", temp_config("lock", R"({"msg_dim": 4, "num_keys": 2, "restarts": 1, "iterations": 50})")});
  ASSERT_EQ(lock.code, kOk) << lock.err;
  EXPECT_NEAR(json::parse(lock.out)["results"]["success_probability"]["value"].get<double>(), 1.0, 1e-10);
}

TEST(Cli, RunCommandRejectsUnknown) { EXPECT_THROW(run_command("nope", json::object(), std::nullopt), ValidationError); }
