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

// Data-parallel inner loops with a scalar reference and an AVX2 variant.
//
// Every kernel is bit-identical across variants: reductions use a fixed
// four-lane accumulation order in both paths, and the project is compiled with
// -ffp-contract=off so no variant fuses multiply-adds differently.

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>

namespace mclab::kernels {

enum class Isa { kScalar, kAvx2 };

std::string_view to_string(Isa isa);

/// ISA used by the dispatched entry points. Defaults to the best supported
/// one; MCLAB_ISA=scalar in the environment forces the reference path.
Isa active_isa();
bool isa_supported(Isa isa);
/// Overrides dispatch (tests); throws if the ISA is unsupported on this CPU.
void force_isa(Isa isa);

struct PhiloxKey {
  std::uint32_t k0;
  std::uint32_t k1;
};

/// One Philox4x32-10 block for counter (c0, c1, c2, c3).
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr, PhiloxKey key);

using Complex = std::complex<double>;
using Mat2 = std::array<Complex, 4>;  // row-major [[a, b], [c, d]]

struct KernelTable {
  // Fills out with 64-bit words from blocks first_block, first_block+1, ...
  // of stream `stream`; each block yields two words (lo pair, hi pair).
  void (*philox_fill)(PhiloxKey key, std::uint64_t stream, std::uint64_t first_block,
                      std::span<std::uint64_t> out);
  // Returns (#words < threshold, #words == threshold).
  std::pair<std::uint64_t, std::uint64_t> (*count_below)(std::span<const std::uint64_t> words,
                                                          std::uint64_t threshold);
  double (*sum)(std::span<const double> values);
  double (*abs_diff_sum)(std::span<const double> a, std::span<const double> b);
  void (*apply_1q)(std::span<Complex> state, unsigned target, const Mat2& u);
  void (*norm_sq)(std::span<const Complex> state, std::span<double> out);
};

const KernelTable& scalar_table();
const KernelTable& avx2_table();  // only valid when isa_supported(kAvx2)
const KernelTable& table_for(Isa isa);
const KernelTable& active();

// Dispatched conveniences.
inline void philox_fill(PhiloxKey key, std::uint64_t stream, std::uint64_t first_block,
                        std::span<std::uint64_t> out) {
  active().philox_fill(key, stream, first_block, out);
}
inline std::pair<std::uint64_t, std::uint64_t> count_below(std::span<const std::uint64_t> words,
                                                            std::uint64_t threshold) {
  return active().count_below(words, threshold);
}
inline double sum(std::span<const double> values) { return active().sum(values); }
inline double abs_diff_sum(std::span<const double> a, std::span<const double> b) {
  return active().abs_diff_sum(a, b);
}
inline void apply_1q(std::span<Complex> state, unsigned target, const Mat2& u) {
  active().apply_1q(state, target, u);
}
inline void norm_sq(std::span<const Complex> state, std::span<double> out) {
  active().norm_sq(state, out);
}

}  // namespace mclab::kernels
