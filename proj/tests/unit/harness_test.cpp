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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>

#include "mclab/core/error.hpp"
#include "mclab/harness/config.hpp"
#include "mclab/harness/experiments.hpp"
#include "mclab/harness/report.hpp"

namespace mclab {
namespace {

namespace fs = std::filesystem;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kIo;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("mclab_harness_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

ExperimentConfig small_e5() {
  return parse_config(R"(
experiment = "E5"
n_grid = [3, 4]
seed = "0x10"
[params]
seed_len = 8
planted = ["1/20"]
)");
}

TEST(ConfigTest, ParsesValuesAndDefaults) {
  const ExperimentConfig c = parse_config(R"(
experiment = "E1"
n_grid = [6]
seed = 99
[params]
c = "6/5"
a_values = [4, "33/2"]
[oracle]
max_program_len = 14
)");
  EXPECT_EQ(c.experiment, "E1");
  EXPECT_EQ(c.n_grid, std::vector<unsigned>{6});
  EXPECT_EQ(c.seed, 99u);
  EXPECT_EQ(c.params.c, Rational(6, 5));
  ASSERT_EQ(c.params.a_values.size(), 2u);
  EXPECT_EQ(c.params.a_values[1], Rational(33, 2));
  EXPECT_EQ(c.params.reps, 100000u);
  EXPECT_EQ(c.oracle.max_program_len, 14u);
  EXPECT_EQ(c.oracle.step_cap, 10000u);
  EXPECT_EQ(small_e5().seed, 16u);
}

TEST(ConfigTest, RejectsBadInput) {
  EXPECT_EQ(code_of([] { parse_config("experiment = \"E7\""); }), ErrorCode::kConfigInvalid);
  EXPECT_EQ(code_of([] { parse_config("n_grid = [8]"); }), ErrorCode::kConfigInvalid);
  EXPECT_EQ(code_of([] { parse_config("experiment = \"E1\"\nbogus = 1"); }), ErrorCode::kConfigInvalid);
  EXPECT_EQ(code_of([] { parse_config("experiment = \"E1\"\n[params]\nreps_typo = 3"); }), ErrorCode::kConfigInvalid);
  EXPECT_EQ(code_of([] { parse_config("experiment = \"E1\"\n[params]\nc = \"1\""); }), ErrorCode::kConfigInvalid);
  EXPECT_EQ(code_of([] { parse_config("experiment = \"E1\"\n[params]\ntau = \"x/y\""); }), ErrorCode::kConfigInvalid);
  EXPECT_EQ(code_of([] { parse_config("experiment = \"E1\"\nn_grid = [1]"); }), ErrorCode::kConfigInvalid);
  EXPECT_EQ(code_of([] { parse_config("experiment = = 3"); }), ErrorCode::kConfigInvalid);
  EXPECT_EQ(code_of([] { load_config("/nonexistent/mclab.toml"); }), ErrorCode::kIo);
}

TEST(ConfigTest, JsonRoundTripKeepsHash) {
  ExperimentConfig c = small_e5();
  c.params.g = Rational(1, 8);
  c.oracle.file = "oracle/x.kto";
  const ExperimentConfig back = ExperimentConfig::from_json(nlohmann::json::parse(c.to_json().dump()));
  EXPECT_EQ(back.to_json(), c.to_json());
  EXPECT_EQ(back.hash(), c.hash());
  EXPECT_EQ(c.hash().size(), 16u);
  ExperimentConfig d = c;
  d.seed += 1;
  EXPECT_NE(d.hash(), c.hash());
}

TEST(ReportTest, SerializeRoundTrip) {
  const ExperimentReport r = run_experiment(small_e5());
  ASSERT_FALSE(r.rows.empty());
  const std::string bytes = r.serialize();
  EXPECT_EQ(bytes.back(), '\n');
  const ExperimentReport back = ExperimentReport::from_json(nlohmann::ordered_json::parse(bytes));
  EXPECT_EQ(back.serialize(), bytes);
  EXPECT_EQ(run_experiment(small_e5()).serialize(), bytes);
}

TEST(ReportTest, TamperedProvenanceIsSchemaMismatch) {
  auto j = nlohmann::ordered_json::parse(run_experiment(small_e5()).serialize());
  j["provenance"]["config"]["seed"] = 17;
  EXPECT_EQ(code_of([&] { ExperimentReport::from_json(j); }), ErrorCode::kSchemaMismatch);
  auto k = nlohmann::ordered_json::parse(run_experiment(small_e5()).serialize());
  k.erase("rows");
  EXPECT_EQ(code_of([&] { ExperimentReport::from_json(k); }), ErrorCode::kSchemaMismatch);
}

TEST(ReportTest, AtomicWriteAndReportFiles) {
  const fs::path dir = scratch("write");
  const ExperimentReport r = run_experiment(small_e5());
  const std::string path = write_report(r, dir.string());
  EXPECT_TRUE(fs::exists(path));
  EXPECT_FALSE(fs::exists(path + ".tmp"));
  atomic_write((dir / "summary.json").string(), "{}\n");
  std::ofstream(dir / "notes.txt") << "x";
  EXPECT_EQ(report_files(dir.string()), std::vector<std::string>{path});
  EXPECT_EQ(read_report(path).serialize(), r.serialize());
  std::ofstream(dir / "broken.json") << "{";
  EXPECT_EQ(code_of([&] { read_report((dir / "broken.json").string()); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([&] { report_files((dir / "absent").string()); }), ErrorCode::kIo);
}

TEST(SummaryTest, EmptyInputIsHeaderOnly) {
  const Summary s = emit_summary({});
  EXPECT_EQ(s.csv, "experiment,n,rows,passed,failed,claims\n");
  EXPECT_EQ(s.json["schema_version"], kReportSchemaVersion);
  EXPECT_TRUE(s.json["reports"].empty());
}

TEST(SummaryTest, GroupsByExperimentAndN) {
  ExperimentReport a, b;
  a.experiment = "E2";
  b.experiment = "E1";
  auto add = [](ExperimentReport& r, unsigned n, const char* claim, bool pass) {
    ReportRow row;
    row.n = n;
    row.claim = claim;
    row.pass = pass;
    r.rows.push_back(row);
  };
  add(a, 8, "decider-band", true);
  add(a, 8, "decider-yes-error", false);
  add(b, 10, "estimate-accuracy", true);
  add(b, 6, "estimate-accuracy", true);
  a.config.experiment = "E2";
  b.config.experiment = "E1";
  const Summary s = emit_summary({a, b});
  EXPECT_EQ(s.csv,
            "experiment,n,rows,passed,failed,claims\n"
            "E1,6,1,1,0,estimate-accuracy\n"
            "E1,10,1,1,0,estimate-accuracy\n"
            "E2,8,2,1,1,decider-band;decider-yes-error\n");
  ASSERT_EQ(s.json["reports"].size(), 2u);
  EXPECT_EQ(s.json["reports"][0]["experiment"], "E1");
  b.schema_version = 2;
  EXPECT_EQ(code_of([&] { emit_summary({a, b}); }), ErrorCode::kSchemaMismatch);
}

TEST(RegistryTest, EveryAnchorMapsToAnExperimentClaim) {
  std::set<std::string> claims;
  for (const char* e : {"E1", "E2", "E3", "E4", "E5", "E6"})
    for (const auto& c : experiment_claims(e)) EXPECT_TRUE(claims.insert(c).second) << c;
  std::set<std::string> anchored;
  for (const auto& [anchor, claim] : claim_anchors()) {
    EXPECT_TRUE(claims.count(claim)) << anchor;
    anchored.insert(claim);
  }
  for (const auto& c : claims) EXPECT_TRUE(anchored.count(c)) << c;
  EXPECT_EQ(code_of([] { experiment_claims("E9"); }), ErrorCode::kConfigInvalid);
}

TEST(RegistryTest, RowsUseDeclaredClaims) {
  const ExperimentReport r = run_experiment(small_e5());
  const std::set<std::string> declared(r.claims.begin(), r.claims.end());
  std::set<std::string> seen;
  for (const auto& row : r.rows) {
    EXPECT_TRUE(declared.count(row.claim)) << row.claim;
    seen.insert(row.claim);
  }
  EXPECT_EQ(seen, declared);
}

TEST(ExperimentTest, UniformAmplificationIsDegenerate) {
  ExperimentConfig c = parse_config(R"(
experiment = "E6"
n_grid = [12]
[params]
blocks = [2]
copies = [2]
distributions = ["uniform", "point_zero"]
)");
  const ExperimentReport r = run_experiment(c);
  bool saw_uniform = false;
  for (const auto& row : r.rows) {
    if (row.params["base"] != "uniform") continue;
    saw_uniform = true;
    EXPECT_EQ(row.status, "degenerate");
    EXPECT_TRUE(row.pass);
    EXPECT_EQ(row.measured.json["exact"], "0");
  }
  EXPECT_TRUE(saw_uniform);
}

TEST(ExperimentTest, OracleBudgetIsEnforced) {
  OracleSettings s;
  s.max_program_len = 12;
  ::setenv("MCLAB_BUDGET", "1000", 1);
  EXPECT_EQ(code_of([&] { obtain_oracle(s); }), ErrorCode::kBudgetExceeded);
  ::setenv("MCLAB_BUDGET", "2^13", 1);
  EXPECT_EQ(obtain_oracle(s).max_program_len(), 12u);
  ::unsetenv("MCLAB_BUDGET");
}

TEST(ExperimentTest, SavedOracleIsReusedAndChecked) {
  const fs::path dir = scratch("oracle");
  ExperimentConfig c = parse_config("experiment = \"E3\"\n[oracle]\nmax_program_len = 10");
  const std::string path = build_oracle_file(c, (dir / "o.kto").string());
  OracleSettings s = c.oracle;
  s.file = path;
  EXPECT_EQ(obtain_oracle(s).size(), obtain_oracle(c.oracle).size());
  s.max_program_len = 11;
  EXPECT_EQ(code_of([&] { obtain_oracle(s); }), ErrorCode::kConfigInvalid);
}

}  // namespace
}  // namespace mclab
