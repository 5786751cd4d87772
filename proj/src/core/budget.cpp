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

#include "mclab/core/budget.hpp"

#include <charconv>
#include <cstdlib>
#include <string_view>

#include "mclab/core/error.hpp"

namespace mclab {

std::uint64_t budget_ceiling(std::uint64_t fallback) {
  const char* env = std::getenv("MCLAB_BUDGET");
  if (env == nullptr || *env == '\0') return fallback;
  std::string_view s(env);
  std::uint64_t v = 0;
  if (s.starts_with("2^")) {
    unsigned e = 0;
    auto r = std::from_chars(s.data() + 2, s.data() + s.size(), e);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size() || e > 63)
      fail(ErrorCode::kConfigInvalid, "MCLAB_BUDGET: bad exponent '" + std::string(s) + "'");
    return std::uint64_t{1} << e;
  }
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size())
    fail(ErrorCode::kConfigInvalid, "MCLAB_BUDGET: not an integer '" + std::string(s) + "'");
  return v;
}

}  // namespace mclab
