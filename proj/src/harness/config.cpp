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

#include "mclab/harness/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

#include "mclab/core/error.hpp"

namespace mclab {

namespace {

[[noreturn]] void bad(const std::string& key, const std::string& why) {
  fail(ErrorCode::kConfigInvalid, key + ": " + why);
}

std::uint64_t as_u64(const toml::node& node, const std::string& key) {
  if (const auto* i = node.as_integer()) {
    if (i->get() < 0) bad(key, "must be non-negative");
    return static_cast<std::uint64_t>(i->get());
  }
  if (const auto* s = node.as_string()) {
    try {
      std::size_t used = 0;
      const std::uint64_t v = std::stoull(s->get(), &used, 0);
      if (used != s->get().size()) bad(key, "not an unsigned integer");
      return v;
    } catch (const std::logic_error&) {
      bad(key, "not an unsigned integer");
    }
  }
  bad(key, "expected an integer");
}

unsigned as_unsigned(const toml::node& node, const std::string& key) {
  const std::uint64_t v = as_u64(node, key);
  if (v > 0xFFFFFFFFull) bad(key, "out of range");
  return static_cast<unsigned>(v);
}

Rational as_rational(const toml::node& node, const std::string& key) {
  if (const auto* i = node.as_integer()) return Rational(static_cast<long>(i->get()));
  if (const auto* s = node.as_string()) {
    try {
      return parse_rational(s->get());
    } catch (const Error&) {
      bad(key, "not a rational \"p/q\"");
    }
  }
  bad(key, "expected an integer or a \"p/q\" string");
}

bool as_bool(const toml::node& node, const std::string& key) {
  if (const auto* b = node.as_boolean()) return b->get();
  bad(key, "expected a boolean");
}

std::string as_string(const toml::node& node, const std::string& key) {
  if (const auto* s = node.as_string()) return s->get();
  bad(key, "expected a string");
}

template <typename T, typename F>
std::vector<T> as_list(const toml::node& node, const std::string& key, F element) {
  const auto* arr = node.as_array();
  if (arr == nullptr) bad(key, "expected an array");
  std::vector<T> out;
  for (const auto& e : *arr) out.push_back(element(e, key));
  return out;
}

void parse_params(const toml::table& t, ExperimentParams& p) {
  for (const auto& [k, v] : t) {
    const std::string key(k.str());
    const std::string path = "params." + key;
    if (key == "reps") p.reps = as_u64(v, path);
    else if (key == "c") p.c = as_rational(v, path);
    else if (key == "q") p.q = as_unsigned(v, path);
    else if (key == "a") p.a = as_rational(v, path);
    else if (key == "b") p.b = as_rational(v, path);
    else if (key == "d") p.d = as_rational(v, path);
    else if (key == "tau") p.tau = as_rational(v, path);
    else if (key == "epsilon") p.epsilon = as_rational(v, path);
    else if (key == "g") p.g = as_rational(v, path);
    else if (key == "k") p.k = as_unsigned(v, path);
    else if (key == "deltas") p.deltas = as_list<unsigned>(v, path, as_unsigned);
    else if (key == "s_values") p.s_values = as_list<unsigned>(v, path, as_unsigned);
    else if (key == "a_values") p.a_values = as_list<Rational>(v, path, as_rational);
    else if (key == "planted") p.planted = as_list<Rational>(v, path, as_rational);
    else if (key == "blocks") p.blocks = as_list<unsigned>(v, path, as_unsigned);
    else if (key == "copies") p.copies = as_list<unsigned>(v, path, as_unsigned);
    else if (key == "distributions") p.distributions = as_list<std::string>(v, path, as_string);
    else if (key == "s1") p.s1 = as_unsigned(v, path);
    else if (key == "s2") p.s2 = as_unsigned(v, path);
    else if (key == "seed_len") p.seed_len = as_unsigned(v, path);
    else if (key == "trials") p.trials = as_u64(v, path);
    else if (key == "index_step_cap") p.index_step_cap = as_u64(v, path);
    else bad(path, "unknown key");
  }
}

void parse_oracle(const toml::table& t, OracleSettings& o) {
  for (const auto& [k, v] : t) {
    const std::string key(k.str());
    const std::string path = "oracle." + key;
    if (key == "max_program_len") o.max_program_len = as_unsigned(v, path);
    else if (key == "step_cap") o.step_cap = as_u64(v, path);
    else if (key == "max_output_len") o.max_output_len = as_unsigned(v, path);
    else if (key == "registry") o.registry = as_bool(v, path);
    else if (key == "file") o.file = as_string(v, path);
    else bad(path, "unknown key");
  }
}

nlohmann::ordered_json frac(const Rational& r) { return to_fraction_string(r); }

template <typename T>
nlohmann::ordered_json opt(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_same_v<T, Rational>) {
    return frac(*v);
  } else {
    return *v;
  }
}

nlohmann::ordered_json fracs(const std::vector<Rational>& v) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : v) arr.push_back(frac(r));
  return arr;
}

Rational rational_field(const nlohmann::json& j, const char* key) { return parse_rational(j.at(key).get<std::string>()); }

std::optional<Rational> opt_rational(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return rational_field(j, key);
}

std::vector<Rational> rational_list(const nlohmann::json& j, const char* key) {
  std::vector<Rational> out;
  for (const auto& e : j.at(key)) out.push_back(parse_rational(e.get<std::string>()));
  return out;
}

}  // namespace

bool is_experiment_id(const std::string& id) {
  static const std::set<std::string> ids{"E1", "E2", "E3", "E4", "E5", "E6"};
  return ids.count(id) > 0;
}

void ExperimentConfig::validate() const {
  if (!is_experiment_id(experiment)) bad("experiment", "expected one of E1..E6, got \"" + experiment + "\"");
  if (n_grid.empty()) bad("n_grid", "must not be empty");
  for (unsigned n : n_grid)
    if (n < 2 || n > 24) bad("n_grid", "values must lie in [2, 24]");
  if (params.reps == 0) bad("params.reps", "must be positive");
  if (params.c <= 1) bad("params.c", "must exceed 1");
  if (params.tau <= 0 || params.tau >= 1) bad("params.tau", "must lie in (0, 1)");
  if (params.epsilon <= 0 || params.epsilon >= 1) bad("params.epsilon", "must lie in (0, 1)");
  for (const auto& p : params.planted)
    if (p < 0 || p > 1) bad("params.planted", "values must lie in [0, 1]");
  for (const auto& a : params.a_values)
    if (a <= 0) bad("params.a_values", "values must be positive");
  if (oracle.max_program_len < 1 || oracle.max_program_len > 24) bad("oracle.max_program_len", "must lie in [1, 24]");
  if (oracle.step_cap < 1) bad("oracle.step_cap", "must be positive");
}

nlohmann::ordered_json ExperimentConfig::to_json() const {
  nlohmann::ordered_json j;
  j["experiment"] = experiment;
  j["n_grid"] = n_grid;
  j["seed"] = seed;
  const auto& p = params;
  nlohmann::ordered_json pj;
  pj["reps"] = p.reps;
  pj["c"] = frac(p.c);
  pj["q"] = p.q;
  pj["a"] = opt(p.a);
  pj["b"] = opt(p.b);
  pj["d"] = opt(p.d);
  pj["tau"] = frac(p.tau);
  pj["epsilon"] = frac(p.epsilon);
  pj["g"] = opt(p.g);
  pj["k"] = p.k;
  pj["deltas"] = p.deltas;
  pj["s_values"] = p.s_values;
  pj["a_values"] = fracs(p.a_values);
  pj["planted"] = fracs(p.planted);
  pj["blocks"] = p.blocks;
  pj["copies"] = p.copies;
  pj["distributions"] = p.distributions;
  pj["s1"] = opt(p.s1);
  pj["s2"] = opt(p.s2);
  pj["seed_len"] = p.seed_len;
  pj["trials"] = p.trials;
  pj["index_step_cap"] = p.index_step_cap;
  j["params"] = pj;
  nlohmann::ordered_json oj;
  oj["max_program_len"] = oracle.max_program_len;
  oj["step_cap"] = oracle.step_cap;
  oj["max_output_len"] = oracle.max_output_len;
  oj["registry"] = oracle.registry;
  oj["file"] = opt(oracle.file);
  j["oracle"] = oj;
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  try {
    ExperimentConfig c;
    c.experiment = j.at("experiment").get<std::string>();
    c.n_grid = j.at("n_grid").get<std::vector<unsigned>>();
    c.seed = j.at("seed").get<std::uint64_t>();
    const auto& pj = j.at("params");
    auto& p = c.params;
    p.reps = pj.at("reps").get<std::uint64_t>();
    p.c = rational_field(pj, "c");
    p.q = pj.at("q").get<unsigned>();
    p.a = opt_rational(pj, "a");
    p.b = opt_rational(pj, "b");
    p.d = opt_rational(pj, "d");
    p.tau = rational_field(pj, "tau");
    p.epsilon = rational_field(pj, "epsilon");
    p.g = opt_rational(pj, "g");
    p.k = pj.at("k").get<unsigned>();
    p.deltas = pj.at("deltas").get<std::vector<unsigned>>();
    p.s_values = pj.at("s_values").get<std::vector<unsigned>>();
    p.a_values = rational_list(pj, "a_values");
    p.planted = rational_list(pj, "planted");
    p.blocks = pj.at("blocks").get<std::vector<unsigned>>();
    p.copies = pj.at("copies").get<std::vector<unsigned>>();
    p.distributions = pj.at("distributions").get<std::vector<std::string>>();
    if (!pj.at("s1").is_null()) p.s1 = pj.at("s1").get<unsigned>();
    if (!pj.at("s2").is_null()) p.s2 = pj.at("s2").get<unsigned>();
    p.seed_len = pj.at("seed_len").get<unsigned>();
    p.trials = pj.at("trials").get<std::uint64_t>();
    p.index_step_cap = pj.at("index_step_cap").get<std::uint64_t>();
    const auto& oj = j.at("oracle");
    c.oracle.max_program_len = oj.at("max_program_len").get<unsigned>();
    c.oracle.step_cap = oj.at("step_cap").get<std::uint64_t>();
    c.oracle.max_output_len = oj.at("max_output_len").get<unsigned>();
    c.oracle.registry = oj.at("registry").get<bool>();
    if (!oj.at("file").is_null()) c.oracle.file = oj.at("file").get<std::string>();
    c.validate();
    return c;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kConfigInvalid, std::string("embedded config: ") + e.what());
  }
}

std::string ExperimentConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : to_json().dump()) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

UtmConfig ExperimentConfig::utm() const {
  UtmConfig u;
  u.max_program_len = oracle.max_program_len;
  u.step_cap = oracle.step_cap;
  u.max_output_len = oracle.max_output_len;
  return u;
}

ExperimentConfig parse_config(const std::string& toml_text) {
  toml::table t;
  try {
    t = toml::parse(toml_text);
  } catch (const toml::parse_error& e) {
    fail(ErrorCode::kConfigInvalid, std::string("TOML: ") + std::string(e.description()));
  }
  ExperimentConfig c;
  bool have_experiment = false;
  for (const auto& [k, v] : t) {
    const std::string key(k.str());
    if (key == "experiment") {
      c.experiment = as_string(v, key);
      have_experiment = true;
    } else if (key == "n_grid") {
      c.n_grid = as_list<unsigned>(v, key, as_unsigned);
    } else if (key == "seed") {
      c.seed = as_u64(v, key);
    } else if (key == "out_dir") {
      c.out_dir = as_string(v, key);
    } else if (key == "params") {
      const auto* tab = v.as_table();
      if (tab == nullptr) bad(key, "expected a table");
      parse_params(*tab, c.params);
    } else if (key == "oracle") {
      const auto* tab = v.as_table();
      if (tab == nullptr) bad(key, "expected a table");
      parse_oracle(*tab, c.oracle);
    } else {
      bad(key, "unknown key");
    }
  }
  if (!have_experiment) bad("experiment", "missing");
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace mclab
