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
#include <vector>

#include "mclab/utm/machine.hpp"

namespace mclab {

struct IndexDescription {
  Program program;
  std::uint64_t high_size = 0;
  unsigned index_bits = 0;  // ceil(log2 |High|)
  /// program length minus index_bits: opcode plus the four gamma fields.
  unsigned overhead_bits = 0;
};

/// INDEX program emitting member i (1-based, lexicographic) of
/// High = {y : Pr[y <- registry(id, n)] >= (99/100)·2^(−s+Δ/2)}.
/// IndexOutOfRange when i is 0 or exceeds |High|; ConfigInvalid for an
/// unknown distribution.
IndexDescription index_description(const DistributionRegistry& registry, std::uint64_t sampler_code, unsigned n,
                                   unsigned s, unsigned delta, std::uint64_t i);

/// Header bits of an INDEX program for these parameters, excluding the index.
unsigned index_header_bits(std::uint64_t sampler_code, unsigned n, unsigned s, unsigned delta);

/// Exact check of |High| <= (100/99)·2^(s − Δ/2).
bool high_size_within_bound(std::uint64_t high_size, unsigned s, unsigned delta);

}  // namespace mclab
