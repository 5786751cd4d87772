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

// Reference kernels. These define the results; the vector variants must
// reproduce them bit for bit.

#include <cstddef>

#include "kernels_internal.hpp"

namespace mclab::kernels {

namespace {

void philox_fill_scalar(PhiloxKey key, std::uint64_t stream, std::uint64_t first_block,
                        std::span<std::uint64_t> out) {
  const auto s_lo = static_cast<std::uint32_t>(stream);
  const auto s_hi = static_cast<std::uint32_t>(stream >> 32);
  std::size_t i = 0;
  for (std::uint64_t block = first_block; i < out.size(); ++block) {
    auto r = philox4x32_10({static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32), s_lo, s_hi},
                           key);
    out[i++] = static_cast<std::uint64_t>(r[0]) | (static_cast<std::uint64_t>(r[1]) << 32);
    if (i < out.size()) out[i++] = static_cast<std::uint64_t>(r[2]) | (static_cast<std::uint64_t>(r[3]) << 32);
  }
}

std::pair<std::uint64_t, std::uint64_t> count_below_scalar(std::span<const std::uint64_t> words,
                                                           std::uint64_t threshold) {
  std::uint64_t lt = 0, eq = 0;
  for (auto w : words) {
    lt += w < threshold;
    eq += w == threshold;
  }
  return {lt, eq};
}

// Four interleaved accumulators, combined as (l0 + l1) + (l2 + l3), then the
// tail in order. The AVX2 path uses the same association.
double sum_scalar(std::span<const double> v) {
  double l[4] = {0, 0, 0, 0};
  std::size_t i = 0;
  for (; i + 4 <= v.size(); i += 4)
    for (int k = 0; k < 4; ++k) l[k] += v[i + k];
  double s = (l[0] + l[1]) + (l[2] + l[3]);
  for (; i < v.size(); ++i) s += v[i];
  return s;
}

double abs_diff_sum_scalar(std::span<const double> a, std::span<const double> b) {
  double l[4] = {0, 0, 0, 0};
  std::size_t i = 0;
  const std::size_t n = a.size();
  for (; i + 4 <= n; i += 4)
    for (int k = 0; k < 4; ++k) {
      double d = a[i + k] - b[i + k];
      l[k] += d < 0 ? -d : d;
    }
  double s = (l[0] + l[1]) + (l[2] + l[3]);
  for (; i < n; ++i) {
    double d = a[i] - b[i];
    s += d < 0 ? -d : d;
  }
  return s;
}

void apply_1q_scalar(std::span<Complex> state, unsigned target, const Mat2& u) {
  const std::size_t stride = std::size_t{1} << target;
  for (std::size_t base = 0; base < state.size(); base += 2 * stride)
    for (std::size_t j = base; j < base + stride; ++j) {
      detail::butterfly(state[j], state[j + stride], u);
    }
}

void norm_sq_scalar(std::span<const Complex> state, std::span<double> out) {
  for (std::size_t i = 0; i < state.size(); ++i) {
    const double re = state[i].real(), im = state[i].imag();
    out[i] = re * re + im * im;
  }
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> c, PhiloxKey key) {
  constexpr std::uint64_t kM0 = 0xD2511F53u, kM1 = 0xCD9E8D57u;
  std::uint32_t k0 = key.k0, k1 = key.k1;
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      k0 += detail::kPhiloxW0;
      k1 += detail::kPhiloxW1;
    }
    const std::uint64_t p0 = kM0 * c[0];
    const std::uint64_t p1 = kM1 * c[2];
    c = {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k0, static_cast<std::uint32_t>(p1),
         static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k1, static_cast<std::uint32_t>(p0)};
  }
  return c;
}

const KernelTable& scalar_table() {
  static const KernelTable t{philox_fill_scalar, count_below_scalar, sum_scalar,
                             abs_diff_sum_scalar, apply_1q_scalar,  norm_sq_scalar};
  return t;
}

}  // namespace mclab::kernels
