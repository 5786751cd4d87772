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
#include <vector>

#include <nlohmann/json.hpp>

#include "mclab/core/interval.hpp"
#include "mclab/harness/config.hpp"

namespace mclab {

inline constexpr int kReportSchemaVersion = 1;

/// A measured or bounding value: an exact fraction, an enclosure, or a plain
/// count. Rendered losslessly.
struct Value {
  nlohmann::ordered_json json;

  static Value exact(const Rational& r);
  static Value enclosure(const Interval& iv);
  static Value count(std::uint64_t v);
  static Value text(const std::string& s);
};

struct ReportRow {
  unsigned n = 0;
  std::string claim;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  Value measured;
  std::string relation;  // "<=", ">=", "==", "in"
  Value bound;
  bool pass = false;
  std::string status;    // "pass", "fail", "degenerate", "vacuous"
  std::string note;
};

struct ExperimentReport {
  int schema_version = kReportSchemaVersion;
  std::string experiment;
  std::vector<std::string> claims;
  std::vector<ReportRow> rows;
  ExperimentConfig config;
  std::string code_version;

  bool all_pass() const;
  nlohmann::ordered_json to_json() const;
  /// Pretty JSON with a trailing newline; the golden byte format.
  std::string serialize() const;
  static ExperimentReport from_json(const nlohmann::ordered_json& j);
};

/// Writes `<dir>/<experiment>.json` through a temporary file and rename.
std::string write_report(const ExperimentReport& report, const std::string& dir);
ExperimentReport read_report(const std::string& path);
/// Every *.json report directly under dir, sorted by file name; summary files
/// are skipped.
std::vector<std::string> report_files(const std::string& dir);

/// Writes bytes to path via `<path>.tmp` and rename.
void atomic_write(const std::string& path, const std::string& bytes);

struct Summary {
  std::string csv;
  nlohmann::ordered_json json;
};

/// One CSV row per (experiment, n); JSON keeps every report, sorted by
/// experiment. SchemaMismatch when schema versions differ.
Summary emit_summary(std::vector<ExperimentReport> reports);

std::string code_version();

}  // namespace mclab
