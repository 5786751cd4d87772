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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mclab/core/budget.hpp"
#include "mclab/utm/machine.hpp"

namespace mclab {

struct OracleEntry {
  unsigned k = 0;       // K_T(x)
  BitString witness;    // lexicographically smallest program of length k
};

struct OracleBuildOptions {
  /// Maximum program executions; BudgetExceeded above it.
  std::uint64_t max_executions = kDefaultBudget;
  /// Worker threads for the enumeration (0: hardware concurrency).
  unsigned threads = 0;
};

/// Time-bounded Kolmogorov table: for every output reachable by a program of
/// length <= L_max within step_cap steps, the minimum program length and its
/// witness. Immutable after construction.
class KolmogorovOracle {
 public:
  KolmogorovOracle() = default;

  const UtmConfig& config() const noexcept { return cfg_; }
  bool used_registry() const noexcept { return used_registry_; }
  std::uint64_t executions() const noexcept { return executions_; }

  /// Exact K_T(x), or nullopt meaning K_T(x) > L_max.
  std::optional<unsigned> lookup(const BitString& x) const;
  const OracleEntry* entry(const BitString& x) const;
  std::size_t size() const noexcept { return table_.size(); }

  /// Whether K_T is decided for every string of length n:
  /// a missing entry certifies K_T(x) > L_max.
  unsigned max_program_len() const noexcept { return cfg_.max_program_len; }

  /// Entries sorted shortlex by x.
  std::vector<std::pair<BitString, OracleEntry>> sorted_entries() const;

  // KTO1 binary format.
  std::string serialize() const;
  static KolmogorovOracle deserialize(const std::string& bytes, const DistributionRegistry* registry = nullptr);
  void save(const std::string& path) const;
  static KolmogorovOracle load(const std::string& path, const DistributionRegistry* registry = nullptr);
  /// CSV with header x_hex,k,witness_hex; bit strings as "len:hex".
  std::string to_csv() const;

  friend KolmogorovOracle build_oracle(const UtmConfig& cfg, const OracleBuildOptions& opts);
  friend bool operator==(const KolmogorovOracle& a, const KolmogorovOracle& b);

 private:
  UtmConfig cfg_;
  bool used_registry_ = false;
  std::uint64_t executions_ = 0;
  std::unordered_map<BitString, OracleEntry, BitStringHash> table_;
};

/// Number of programs of lengths 1..L: 2^{L+1} − 2.
std::uint64_t program_count(unsigned max_len);

/// Enumerates every program of length 1..L_max. Ties at equal length go to the
/// lexicographically smallest program; the parallel merge reproduces the
/// serial scan exactly.
KolmogorovOracle build_oracle(const UtmConfig& cfg, const OracleBuildOptions& opts = {});

/// |{x in {0,1}^n : K_T(x) <= s}|; requires s <= L_max.
std::uint64_t count_low_complexity(const KolmogorovOracle& oracle, unsigned n, unsigned s);

/// |{x : K_T(x) <= s}| over all lengths.
std::uint64_t count_low_complexity_all(const KolmogorovOracle& oracle, unsigned s);

}  // namespace mclab
