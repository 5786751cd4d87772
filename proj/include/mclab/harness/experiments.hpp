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

#include <string>
#include <utility>
#include <vector>

#include "mclab/harness/config.hpp"
#include "mclab/harness/report.hpp"
#include "mclab/utm/oracle.hpp"

namespace mclab {

/// Claim ids an experiment's rows may carry, in row order.
std::vector<std::string> experiment_claims(const std::string& experiment);

/// (in-scope anchor, claim id) pairs; every claim id appears in some
/// experiment_claims list.
std::vector<std::pair<std::string, std::string>> claim_anchors();

/// The registry that INDEX descriptions run against.
const DistributionRegistry& corpus_registry();

/// Loads oracle.file when it exists, otherwise enumerates. Budget from
/// MCLAB_BUDGET.
KolmogorovOracle obtain_oracle(const OracleSettings& settings);

/// Builds the oracle described by cfg.oracle and saves it to cfg.oracle.file
/// (or `fallback_path`). Returns the written path.
std::string build_oracle_file(const ExperimentConfig& cfg, const std::string& fallback_path);

/// Deterministic in (cfg, code version).
ExperimentReport run_experiment(const ExperimentConfig& cfg);

}  // namespace mclab
