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

#include <nlohmann/json.hpp>

#include "mclab/core/error.hpp"
#include "mclab/sampler/sampler.hpp"

namespace mclab {

SeededSampler seeded_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParse, std::string("seeded sampler JSON: ") + e.what());
  }
  try {
    if (j.contains("truth_table")) {
      const auto& tt = j.at("truth_table");
      std::vector<BitString> outputs;
      for (const auto& o : tt.at("outputs")) outputs.push_back(BitString::parse(o.get<std::string>()));
      return SeededSampler::truth_table(tt.at("t").get<unsigned>(), tt.at("n").get<unsigned>(), std::move(outputs));
    }
    const std::string name = j.at("builtin").get<std::string>();
    const unsigned t = j.at("t").get<unsigned>();
    const unsigned n = j.value("n", t);
    if (name == "identity") {
      if (n != t) fail(ErrorCode::kConfigInvalid, "identity sampler needs n == t");
      return SeededSampler::identity(n);
    }
    if (name == "constant") return SeededSampler::constant(BitString::parse(j.at("z").get<std::string>()), t);
    if (name == "parity_prefix") return SeededSampler::parity_prefix(t, n);
    if (name == "and_blocks") return SeededSampler::and_blocks(t, n);
    if (name == "popcount") return SeededSampler::popcount(t, n);
    fail(ErrorCode::kConfigInvalid, "unknown seeded builtin '" + name + "'");
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParse, std::string("seeded sampler JSON: ") + e.what());
  }
}

}  // namespace mclab
