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

#include <cstdio>
#include <filesystem>
#include <map>

#include "mclab/core/error.hpp"
#include "mclab/sampler/corpus.hpp"
#include "mclab/utm/index.hpp"
#include "mclab/utm/machine.hpp"
#include "mclab/utm/oracle.hpp"

namespace mclab {
namespace {

UtmConfig small_cfg(unsigned max_len = 12) {
  UtmConfig c;
  c.max_program_len = max_len;
  return c;
}

RunResult run(std::string_view bits, const UtmConfig& cfg = small_cfg()) {
  return run_program(Program::parse(bits), cfg);
}

TEST(EliasGammaTest, Codes) {
  EXPECT_EQ(elias_gamma(1).str(), "1");
  EXPECT_EQ(elias_gamma(2).str(), "010");
  EXPECT_EQ(elias_gamma(5).str(), "00101");
  EXPECT_THROW(elias_gamma(0), Error);
  EXPECT_EQ(index_width(1), 0u);
  EXPECT_EQ(index_width(2), 1u);
  EXPECT_EQ(index_width(9), 4u);
  EXPECT_EQ(index_width(16), 4u);
}

struct Trace {
  const char* program;
  RunStatus status;
  const char* output;
  std::uint64_t steps;
};

TEST(MachineTest, HandTracedPrograms) {
  const Trace traces[] = {
      {"0001011", RunStatus::kHalted, "1011", 5},
      {"0011", RunStatus::kHalted, "1", 2},
      {"0011010", RunStatus::kHalted, "11", 4},
      {"0010011", RunStatus::kHalted, "01", 4},
      {"0011101011", RunStatus::kHalted, "1111", 6},
      {"00111101", RunStatus::kHalted, "11", 6},
      {"0011100", RunStatus::kHalted, "0", 4},
      {"000", RunStatus::kHalted, "", 1},
      {"111", RunStatus::kInvalid, "", 0},
      {"001", RunStatus::kInvalid, "", 0},
      {"1011", RunStatus::kInvalid, "", 0},
      {"01", RunStatus::kInvalid, "", 0},
  };
  for (const auto& t : traces) {
    auto r = run(t.program);
    EXPECT_EQ(r.status, t.status) << t.program;
    EXPECT_EQ(r.output.str(), t.output) << t.program;
    if (t.status == RunStatus::kHalted) {
      EXPECT_EQ(r.steps, t.steps) << t.program;
    }
  }
}

TEST(MachineTest, StepCapAndOutputLimit) {
  auto cfg = small_cfg();
  cfg.step_cap = 4;
  EXPECT_EQ(run("0001011", cfg).status, RunStatus::kTimeout);
  cfg.step_cap = 5;
  EXPECT_EQ(run("0001011", cfg).status, RunStatus::kHalted);
  cfg.step_cap = 0;
  EXPECT_EQ(run("0001011", cfg).status, RunStatus::kTimeout);
  auto narrow = small_cfg();
  narrow.max_output_len = 2;
  EXPECT_EQ(run("0001011", narrow).status, RunStatus::kInvalid);
  EXPECT_THROW(run("0001011", small_cfg(4)), Error);
}

TEST(MachineTest, LoopsTerminateUnderCap) {
  // BIT 1, DUP, LOOP 3: four passes, 1 -> 2, 3 -> 6, 7 -> 14, 15 -> 30.
  auto r = run("0011010110011", small_cfg(16));
  EXPECT_EQ(r.status, RunStatus::kInvalid);  // 30 > max_output_len
  auto cfg = small_cfg(16);
  cfg.max_output_len = 64;
  auto ok = run_program(Program::parse("0011010110011"), cfg);
  EXPECT_EQ(ok.status, RunStatus::kHalted);
  EXPECT_EQ(ok.output, BitString::ones(30));
}

TEST(MachineTest, PureFunction) {
  for (std::uint64_t v = 0; v < 512; ++v) {
    Program p{BitString(v, 9)};
    auto a = run_program(p, small_cfg()), b = run_program(p, small_cfg());
    EXPECT_EQ(a.status, b.status);
    EXPECT_EQ(a.output, b.output);
    EXPECT_EQ(a.steps, b.steps);
  }
}

// Reference: serial scan with an ordered map keyed by output.
std::map<BitString, std::pair<unsigned, BitString>> reference_table(const UtmConfig& cfg) {
  std::map<BitString, std::pair<unsigned, BitString>> t;
  for (unsigned len = 1; len <= cfg.max_program_len; ++len)
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
      auto r = run_program(Program{BitString(v, len)}, cfg);
      if (r.halted()) t.emplace(r.output, std::make_pair(len, BitString(v, len)));
    }
  return t;
}

TEST(OracleTest, MatchesSerialReference) {
  auto cfg = small_cfg(11);
  auto ref = reference_table(cfg);
  for (unsigned threads : {1u, 3u}) {
    auto o = build_oracle(cfg, {.max_executions = kDefaultBudget, .threads = threads});
    ASSERT_EQ(o.size(), ref.size());
    for (const auto& [x, kw] : ref) {
      const auto* e = o.entry(x);
      ASSERT_NE(e, nullptr) << x.str();
      EXPECT_EQ(e->k, kw.first);
      EXPECT_EQ(e->witness, kw.second);
    }
    EXPECT_EQ(o.executions(), program_count(11));
  }
}

TEST(OracleTest, CountingBoundEveryThreshold) {
  auto o = build_oracle(small_cfg(12));
  for (unsigned s = 0; s <= 12; ++s)
    EXPECT_LE(count_low_complexity_all(o, s), (std::uint64_t{2} << s) - 2) << s;
  EXPECT_THROW(count_low_complexity_all(o, 13), Error);
}

TEST(OracleTest, BudgetExceeded) {
  try {
    build_oracle(small_cfg(12), {.max_executions = 100});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBudgetExceeded);
  }
}

TEST(OracleTest, Kto1RoundTripAndCsv) {
  auto o = build_oracle(small_cfg(10));
  auto back = KolmogorovOracle::deserialize(o.serialize());
  EXPECT_TRUE(back == o);
  auto path = (std::filesystem::temp_directory_path() / "mclab_oracle.kto1").string();
  o.save(path);
  EXPECT_TRUE(KolmogorovOracle::load(path) == o);
  std::remove(path.c_str());
  EXPECT_EQ(o.to_csv().rfind("x_hex,k,witness_hex\n", 0), 0u);
  std::string bad = o.serialize();
  bad.pop_back();
  EXPECT_THROW(KolmogorovOracle::deserialize(bad), Error);
}

TEST(IndexTest, DescriptionsReproduceHighMembers) {
  CorpusRegistry reg;
  const unsigned n = 8, s = 6, delta = 2;
  const auto* high = reg.high(kCorpusBernoulli34, n, s, delta);
  ASSERT_NE(high, nullptr);
  ASSERT_EQ(high->size(), 9u);  // 1^8 and the eight weight-7 strings
  UtmConfig cfg;
  cfg.max_program_len = 64;
  cfg.step_cap = 1u << 20;
  cfg.registry = &reg;
  for (std::uint64_t i = 1; i <= high->size(); ++i) {
    auto desc = index_description(reg, kCorpusBernoulli34, n, s, delta, i);
    EXPECT_EQ(desc.overhead_bits, index_header_bits(kCorpusBernoulli34, n, s, delta));
    EXPECT_EQ(desc.index_bits, 4u);
    auto r = run_program(desc.program, cfg);
    ASSERT_TRUE(r.halted());
    EXPECT_EQ(r.output, (*high)[i - 1]);
    EXPECT_EQ(r.steps, 1 + (1u << n) + n);
  }
  EXPECT_TRUE(high_size_within_bound(high->size(), s, delta));
  try {
    index_description(reg, kCorpusBernoulli34, n, s, delta, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIndexOutOfRange);
  }
  EXPECT_THROW(index_description(reg, kCorpusBernoulli34, n, s, delta, 0), Error);
}

TEST(IndexTest, WithoutRegistryIsInvalid) {
  CorpusRegistry reg;
  auto desc = index_description(reg, kCorpusBernoulli34, 8, 6, 2, 1);
  UtmConfig cfg;
  cfg.max_program_len = 64;
  EXPECT_EQ(run_program(desc.program, cfg).status, RunStatus::kInvalid);
}

}  // namespace
}  // namespace mclab
