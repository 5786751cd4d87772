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

namespace mclab {

/// Default ceiling on enumeration work (program executions, table entries).
inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 25;

/// The ceiling in effect: MCLAB_BUDGET (decimal, or 2^k written "2^k") when
/// set and valid, otherwise `fallback`.
std::uint64_t budget_ceiling(std::uint64_t fallback = kDefaultBudget);

}  // namespace mclab
