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

#include "mclab/harness/report.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "mclab/core/error.hpp"

#ifndef MCLAB_VERSION
#define MCLAB_VERSION "0.0.0"
#endif

namespace mclab {

namespace fs = std::filesystem;

Value Value::exact(const Rational& r) {
  Value v;
  v.json["exact"] = to_fraction_string(r);
  v.json["approx"] = r.get_d();
  return v;
}

Value Value::enclosure(const Interval& iv) {
  Value v;
  v.json["lower"] = iv.lower();
  v.json["upper"] = iv.upper();
  return v;
}

Value Value::count(std::uint64_t c) {
  Value v;
  v.json["count"] = c;
  return v;
}

Value Value::text(const std::string& s) {
  Value v;
  v.json["text"] = s;
  return v;
}

std::string code_version() { return MCLAB_VERSION; }

bool ExperimentReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.pass; });
}

nlohmann::ordered_json ExperimentReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema_version"] = schema_version;
  j["experiment"] = experiment;
  j["claims"] = claims;
  auto rows_json = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json rj;
    rj["n"] = r.n;
    rj["claim"] = r.claim;
    rj["params"] = r.params;
    rj["measured"] = r.measured.json;
    rj["relation"] = r.relation;
    rj["bound"] = r.bound.json;
    rj["pass"] = r.pass;
    rj["status"] = r.status;
    rj["note"] = r.note;
    rows_json.push_back(std::move(rj));
  }
  j["rows"] = std::move(rows_json);
  nlohmann::ordered_json prov;
  prov["seed"] = config.seed;
  prov["config_hash"] = config.hash();
  prov["code_version"] = code_version;
  prov["config"] = config.to_json();
  j["provenance"] = std::move(prov);
  return j;
}

std::string ExperimentReport::serialize() const { return to_json().dump(2) + "\n"; }

ExperimentReport ExperimentReport::from_json(const nlohmann::ordered_json& j) {
  try {
    ExperimentReport r;
    r.schema_version = j.at("schema_version").get<int>();
    r.experiment = j.at("experiment").get<std::string>();
    r.claims = j.at("claims").get<std::vector<std::string>>();
    for (const auto& rj : j.at("rows")) {
      ReportRow row;
      row.n = rj.at("n").get<unsigned>();
      row.claim = rj.at("claim").get<std::string>();
      row.params = rj.at("params");
      row.measured.json = rj.at("measured");
      row.relation = rj.at("relation").get<std::string>();
      row.bound.json = rj.at("bound");
      row.pass = rj.at("pass").get<bool>();
      row.status = rj.at("status").get<std::string>();
      row.note = rj.at("note").get<std::string>();
      r.rows.push_back(std::move(row));
    }
    const auto& prov = j.at("provenance");
    r.code_version = prov.at("code_version").get<std::string>();
    r.config = ExperimentConfig::from_json(nlohmann::json::parse(prov.at("config").dump()));
    if (prov.at("config_hash").get<std::string>() != r.config.hash())
      fail(ErrorCode::kSchemaMismatch, "config hash does not match the embedded config");
    return r;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kSchemaMismatch, std::string("report: ") + e.what());
  }
}

void atomic_write(const std::string& path, const std::string& bytes) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::kIo, "cannot write " + tmp);
    out << bytes;
    out.flush();
    if (!out) fail(ErrorCode::kIo, "short write to " + tmp);
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) fail(ErrorCode::kIo, "rename " + tmp + ": " + ec.message());
}

std::string write_report(const ExperimentReport& report, const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorCode::kIo, "cannot create " + dir + ": " + ec.message());
  const std::string path = (fs::path(dir) / (report.experiment + ".json")).string();
  atomic_write(path, report.serialize());
  return path;
}

ExperimentReport read_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(ss.str());
  } catch (const nlohmann::ordered_json::parse_error& e) {
    fail(ErrorCode::kParse, path + ": " + e.what());
  }
  return ExperimentReport::from_json(j);
}

std::vector<std::string> report_files(const std::string& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) fail(ErrorCode::kIo, dir + " is not a directory");
  std::vector<std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file() || e.path().extension() != ".json") continue;
    if (e.path().filename() == "summary.json") continue;
    out.push_back(e.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

Summary emit_summary(std::vector<ExperimentReport> reports) {
  std::stable_sort(reports.begin(), reports.end(),
                   [](const ExperimentReport& a, const ExperimentReport& b) { return a.experiment < b.experiment; });
  for (const auto& r : reports)
    if (r.schema_version != kReportSchemaVersion)
      fail(ErrorCode::kSchemaMismatch, r.experiment + " has schema version " + std::to_string(r.schema_version));
  Summary s;
  std::ostringstream csv;
  csv << "experiment,n,rows,passed,failed,claims\n";
  for (const auto& r : reports) {
    struct Group {
      unsigned rows = 0, passed = 0;
      std::set<std::string> claims;
    };
    std::map<unsigned, Group> by_n;
    for (const auto& row : r.rows) {
      auto& g = by_n[row.n];
      ++g.rows;
      g.passed += row.pass;
      g.claims.insert(row.claim);
    }
    for (const auto& [n, g] : by_n) {
      csv << r.experiment << ',' << n << ',' << g.rows << ',' << g.passed << ',' << (g.rows - g.passed) << ',';
      bool first = true;
      for (const auto& c : g.claims) {
        csv << (first ? "" : ";") << c;
        first = false;
      }
      csv << '\n';
    }
  }
  s.csv = csv.str();
  s.json["schema_version"] = kReportSchemaVersion;
  s.json["reports"] = nlohmann::ordered_json::array();
  for (const auto& r : reports) s.json["reports"].push_back(r.to_json());
  return s;
}

}  // namespace mclab
