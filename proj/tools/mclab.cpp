// Copyright 2026 The mclab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// mclab: command-line driver for the experiment harness.
//
// Exit codes: 0 every row passes, 2 some row fails, 3 configuration or input
// error, 4 enumeration budget exceeded.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mclab/core/error.hpp"
#include "mclab/harness/config.hpp"
#include "mclab/harness/experiments.hpp"
#include "mclab/harness/golden.hpp"
#include "mclab/harness/report.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 2;
constexpr int kExitConfig = 3;
constexpr int kExitBudget = 4;

int exit_code_for(mclab::ErrorCode code) {
  return code == mclab::ErrorCode::kBudgetExceeded ? kExitBudget : kExitConfig;
}

int cmd_oracle_build(const std::string& config_path, const std::string& out) {
  const mclab::ExperimentConfig cfg = mclab::load_config(config_path);
  const std::string path = mclab::build_oracle_file(cfg, out);
  std::cout << "oracle written to " << path << "\n";
  return kExitPass;
}

int cmd_run(const std::string& experiment, const std::string& config_path, std::optional<std::uint64_t> seed,
            std::string out) {
  mclab::ExperimentConfig cfg = mclab::load_config(config_path);
  if (cfg.experiment != experiment)
    mclab::fail(mclab::ErrorCode::kConfigInvalid,
                config_path + " configures " + cfg.experiment + ", not " + experiment);
  if (seed) cfg.seed = *seed;
  if (out.empty()) out = cfg.out_dir.empty() ? "results" : cfg.out_dir;
  const mclab::ExperimentReport report = mclab::run_experiment(cfg);
  const std::string path = mclab::write_report(report, out);
  std::size_t passed = 0;
  for (const auto& r : report.rows) {
    passed += r.pass;
    if (!r.pass)
      std::cout << "FAIL " << r.claim << " n=" << r.n << " " << r.params.dump() << " measured "
                << r.measured.json.dump() << " " << r.relation << " " << r.bound.json.dump() << "\n";
  }
  std::cout << report.experiment << ": " << passed << "/" << report.rows.size() << " rows pass; " << path << "\n";
  return report.all_pass() ? kExitPass : kExitFail;
}

int cmd_summarize(const std::string& dir) {
  std::vector<mclab::ExperimentReport> reports;
  for (const auto& path : mclab::report_files(dir)) reports.push_back(mclab::read_report(path));
  bool all = true;
  for (const auto& r : reports) all = all && r.all_pass();
  const mclab::Summary s = mclab::emit_summary(std::move(reports));
  const std::filesystem::path base(dir);
  mclab::atomic_write((base / "summary.csv").string(), s.csv);
  mclab::atomic_write((base / "summary.json").string(), s.json.dump(2) + "\n");
  std::cout << s.csv;
  return all ? kExitPass : kExitFail;
}

int cmd_verify_golden(const std::string& dir) {
  bool all = true;
  for (const auto& g : mclab::verify_golden(dir)) {
    std::cout << (g.match ? "match    " : "MISMATCH ") << g.file;
    if (!g.match) std::cout << ": " << g.detail;
    std::cout << "\n";
    all = all && g.match;
  }
  return all ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mclab: exact experiments on time-bounded Kolmogorov complexity and pseudorandomness"};
  app.require_subcommand(1);

  auto* oracle = app.add_subcommand("oracle", "Kolmogorov oracle tables");
  oracle->require_subcommand(1);
  auto* build = oracle->add_subcommand("build", "Enumerate programs and save the oracle");
  std::string build_config, build_out = "oracle.kto";
  build->add_option("--config", build_config, "TOML config")->required();
  build->add_option("--out", build_out, "Output path when the config names no oracle file");

  auto* run = app.add_subcommand("run", "Run one experiment and write its report");
  std::string experiment, run_config, run_out;
  std::optional<std::uint64_t> seed;
  run->add_option("--experiment", experiment, "E1..E6")
      ->required()
      ->check(CLI::IsMember({"E1", "E2", "E3", "E4", "E5", "E6"}));
  run->add_option("--config", run_config, "TOML config")->required();
  run->add_option("--seed", seed, "Overrides the config seed");
  run->add_option("--out", run_out, "Report directory");

  auto* summarize = app.add_subcommand("summarize", "Aggregate reports into summary.csv and summary.json");
  std::string summarize_dir;
  summarize->add_option("dir", summarize_dir, "Report directory")->required();

  auto* golden = app.add_subcommand("verify-golden", "Re-run reports and compare bytes");
  std::string golden_dir;
  golden->add_option("dir", golden_dir, "Golden directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitConfig;
  }

  try {
    if (*build) return cmd_oracle_build(build_config, build_out);
    if (*run) return cmd_run(experiment, run_config, seed, run_out);
    if (*summarize) return cmd_summarize(summarize_dir);
    if (*golden) return cmd_verify_golden(golden_dir);
  } catch (const mclab::Error& e) {
    std::cerr << "mclab: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "mclab: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
