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
#include <vector>

#include <nlohmann/json.hpp>

#include "mclab/core/rational.hpp"
#include "mclab/utm/machine.hpp"

namespace mclab {

struct OracleSettings {
  unsigned max_program_len = 16;
  std::uint64_t step_cap = 10000;
  unsigned max_output_len = 24;
  bool registry = true;
  /// Prebuilt KTO1 file; built on demand when absent.
  std::optional<std::string> file;
};

/// Per-experiment knobs. Unset optionals take the experiment's default.
struct ExperimentParams {
  std::uint64_t reps = 100000;
  Rational c{11, 10};
  unsigned q = 1;
  std::optional<Rational> a, b, d;
  Rational tau{3, 4};
  Rational epsilon{1, 2};
  std::optional<Rational> g;
  unsigned k = 2;
  std::vector<unsigned> deltas;
  std::vector<unsigned> s_values;
  std::vector<Rational> a_values;
  std::vector<Rational> planted;
  std::vector<unsigned> blocks;
  std::vector<unsigned> copies;
  std::vector<std::string> distributions;  // corpus names; empty means all
  std::optional<unsigned> s1, s2;
  unsigned seed_len = 0;                   // 0: experiment default
  std::uint64_t trials = 0;
  std::uint64_t index_step_cap = std::uint64_t{1} << 20;
};

struct ExperimentConfig {
  std::string experiment;  // E1..E6
  std::vector<unsigned> n_grid{8, 10, 12, 14};
  std::uint64_t seed = 0;
  ExperimentParams params;
  OracleSettings oracle;
  std::string out_dir;

  /// ConfigInvalid on an unknown experiment or n outside [2, 24].
  void validate() const;
  /// Canonical JSON: fixed key order, exact fractions, out_dir omitted.
  nlohmann::ordered_json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json& j);
  /// FNV-1a 64 of to_json().dump(), as 16 hex digits.
  std::string hash() const;
  UtmConfig utm() const;
};

/// Parses a TOML config. ConfigInvalid on unknown keys or bad values, Io
/// when the file cannot be read.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& toml_text);

bool is_experiment_id(const std::string& id);

}  // namespace mclab
