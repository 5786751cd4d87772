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

#include "mclab/harness/golden.hpp"

#include <fstream>
#include <sstream>

#include "mclab/core/error.hpp"
#include "mclab/harness/experiments.hpp"
#include "mclab/harness/report.hpp"

namespace mclab {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string first_difference(const std::string& want, const std::string& got) {
  std::istringstream a(want), b(got);
  std::string la, lb;
  for (unsigned line = 1;; ++line) {
    const bool ha = static_cast<bool>(std::getline(a, la));
    const bool hb = static_cast<bool>(std::getline(b, lb));
    if (!ha && !hb) return "identical lines, different bytes";
    if (la != lb || ha != hb)
      return "line " + std::to_string(line) + ": expected `" + (ha ? la : "<eof>") + "`, got `" +
             (hb ? lb : "<eof>") + "`";
  }
}

}  // namespace

std::vector<GoldenResult> verify_golden(const std::string& dir) {
  std::vector<GoldenResult> out;
  for (const auto& path : report_files(dir)) {
    GoldenResult g;
    g.file = path;
    const std::string want = slurp(path);
    const ExperimentReport stored = read_report(path);
    g.experiment = stored.experiment;
    if (stored.code_version != code_version()) {
      g.detail = "code version " + stored.code_version + " differs from " + code_version();
    } else {
      const std::string got = run_experiment(stored.config).serialize();
      g.match = got == want;
      if (!g.match) g.detail = first_difference(want, got);
    }
    out.push_back(std::move(g));
  }
  if (out.empty()) fail(ErrorCode::kIo, "no reports under " + dir);
  return out;
}

}  // namespace mclab
