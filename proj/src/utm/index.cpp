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

#include "mclab/utm/index.hpp"

#include "mclab/core/error.hpp"

namespace mclab {

unsigned index_header_bits(std::uint64_t sampler_code, unsigned n, unsigned s, unsigned delta) {
  return 3 + elias_gamma(sampler_code).size() + elias_gamma(n).size() + elias_gamma(s + 1).size() +
         elias_gamma(delta + 1).size();
}

IndexDescription index_description(const DistributionRegistry& registry, std::uint64_t sampler_code, unsigned n,
                                   unsigned s, unsigned delta, std::uint64_t i) {
  const auto* high = registry.high(sampler_code, n, s, delta);
  if (high == nullptr) fail(ErrorCode::kConfigInvalid, "unknown distribution code " + std::to_string(sampler_code));
  if (i == 0 || i > high->size())
    fail(ErrorCode::kIndexOutOfRange, "index " + std::to_string(i) + " outside High of size " + std::to_string(high->size()));
  IndexDescription d;
  d.high_size = high->size();
  d.index_bits = index_width(high->size());
  BitString bits = BitString(static_cast<std::uint64_t>(Opcode::kIndex), 3)
                       .concat(elias_gamma(sampler_code))
                       .concat(elias_gamma(n))
                       .concat(elias_gamma(s + 1))
                       .concat(elias_gamma(delta + 1))
                       .concat(BitString(i - 1, d.index_bits));
  d.program = Program::from_bits(bits);
  d.overhead_bits = bits.size() - d.index_bits;
  return d;
}

bool high_size_within_bound(std::uint64_t high_size, unsigned s, unsigned delta) {
  // |High|·(99/100) <= 2^((2s − Δ)/2)
  return compare_pow2(Rational(BigInt(std::to_string(high_size))) * Rational(99, 100),
                      2 * static_cast<long>(s) - static_cast<long>(delta), 2) <= 0;
}

}  // namespace mclab
