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

// AVX2 variants. Compiled with -mavx2 only; reached through the dispatch
// table after a CPUID check.

#include <immintrin.h>

#include <cstddef>

#include "kernels_internal.hpp"

namespace mclab::kernels {

namespace {

// Four Philox blocks per iteration, one block per 64-bit lane; each 32-bit
// counter word sits in the low half of its lane.
void philox_fill_avx2(PhiloxKey key, std::uint64_t stream, std::uint64_t first_block,
                      std::span<std::uint64_t> out) {
  const __m256i lo_mask = _mm256_set1_epi64x(0xFFFFFFFFll);
  const __m256i m0 = _mm256_set1_epi64x(0xD2511F53ll);
  const __m256i m1 = _mm256_set1_epi64x(0xCD9E8D57ll);
  const __m256i s_lo = _mm256_set1_epi64x(static_cast<std::uint32_t>(stream));
  const __m256i s_hi = _mm256_set1_epi64x(static_cast<std::uint32_t>(stream >> 32));

  std::size_t i = 0;
  std::uint64_t block = first_block;
  for (; i + 8 <= out.size(); i += 8, block += 4) {
    const std::uint64_t b0 = block, b1 = block + 1, b2 = block + 2, b3 = block + 3;
    __m256i c0 = _mm256_set_epi64x(static_cast<std::uint32_t>(b3), static_cast<std::uint32_t>(b2),
                                   static_cast<std::uint32_t>(b1), static_cast<std::uint32_t>(b0));
    __m256i c1 = _mm256_set_epi64x(b3 >> 32, b2 >> 32, b1 >> 32, b0 >> 32);
    __m256i c2 = s_lo, c3 = s_hi;
    std::uint32_t k0 = key.k0, k1 = key.k1;
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        k0 += detail::kPhiloxW0;
        k1 += detail::kPhiloxW1;
      }
      const __m256i p0 = _mm256_mul_epu32(c0, m0);
      const __m256i p1 = _mm256_mul_epu32(c2, m1);
      const __m256i vk0 = _mm256_set1_epi64x(k0), vk1 = _mm256_set1_epi64x(k1);
      const __m256i n0 = _mm256_xor_si256(_mm256_xor_si256(_mm256_srli_epi64(p1, 32), c1), vk0);
      const __m256i n1 = _mm256_and_si256(p1, lo_mask);
      const __m256i n2 = _mm256_xor_si256(_mm256_xor_si256(_mm256_srli_epi64(p0, 32), c3), vk1);
      const __m256i n3 = _mm256_and_si256(p0, lo_mask);
      c0 = n0;
      c1 = n1;
      c2 = n2;
      c3 = n3;
    }
    const __m256i w0 = _mm256_or_si256(c0, _mm256_slli_epi64(c1, 32));
    const __m256i w1 = _mm256_or_si256(c2, _mm256_slli_epi64(c3, 32));
    const __m256i even = _mm256_unpacklo_epi64(w0, w1);  // blocks 0, 2
    const __m256i odd = _mm256_unpackhi_epi64(w0, w1);   // blocks 1, 3
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + i), _mm256_permute2x128_si256(even, odd, 0x20));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + i + 4), _mm256_permute2x128_si256(even, odd, 0x31));
  }
  if (i < out.size()) scalar_table().philox_fill(key, stream, block, out.subspan(i));
}

std::pair<std::uint64_t, std::uint64_t> count_below_avx2(std::span<const std::uint64_t> words,
                                                         std::uint64_t threshold) {
  const __m256i sign = _mm256_set1_epi64x(static_cast<long long>(0x8000000000000000ull));
  const __m256i thr = _mm256_set1_epi64x(static_cast<long long>(threshold));
  const __m256i thr_s = _mm256_xor_si256(thr, sign);
  __m256i lt = _mm256_setzero_si256(), eq = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= words.size(); i += 4) {
    const __m256i w = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words.data() + i));
    lt = _mm256_sub_epi64(lt, _mm256_cmpgt_epi64(thr_s, _mm256_xor_si256(w, sign)));
    eq = _mm256_sub_epi64(eq, _mm256_cmpeq_epi64(w, thr));
  }
  alignas(32) std::uint64_t l[4], e[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(l), lt);
  _mm256_store_si256(reinterpret_cast<__m256i*>(e), eq);
  std::uint64_t nlt = l[0] + l[1] + l[2] + l[3], neq = e[0] + e[1] + e[2] + e[3];
  for (; i < words.size(); ++i) {
    nlt += words[i] < threshold;
    neq += words[i] == threshold;
  }
  return {nlt, neq};
}

double combine(__m256d acc) {
  alignas(32) double l[4];
  _mm256_store_pd(l, acc);
  return (l[0] + l[1]) + (l[2] + l[3]);
}

double sum_avx2(std::span<const double> v) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= v.size(); i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(v.data() + i));
  double s = combine(acc);
  for (; i < v.size(); ++i) s += v[i];
  return s;
}

double abs_diff_sum_avx2(std::span<const double> a, std::span<const double> b) {
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7FFFFFFFFFFFFFFFll));
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  const std::size_t n = a.size();
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i));
    acc = _mm256_add_pd(acc, _mm256_and_pd(d, abs_mask));
  }
  double s = combine(acc);
  for (; i < n; ++i) {
    double d = a[i] - b[i];
    s += d < 0 ? -d : d;
  }
  return s;
}

// Two complex amplitudes per register: [re0, im0, re1, im1].
inline __m256d cmul(__m256d ure, __m256d uim, __m256d a) {
  const __m256d swapped = _mm256_permute_pd(a, 0b0101);
  return _mm256_addsub_pd(_mm256_mul_pd(ure, a), _mm256_mul_pd(uim, swapped));
}

void apply_1q_avx2(std::span<Complex> state, unsigned target, const Mat2& u) {
  const std::size_t stride = std::size_t{1} << target;
  if (stride < 2) {
    scalar_table().apply_1q(state, target, u);
    return;
  }
  __m256d re[4], im[4];
  for (int k = 0; k < 4; ++k) {
    re[k] = _mm256_set1_pd(u[k].real());
    im[k] = _mm256_set1_pd(u[k].imag());
  }
  double* d = reinterpret_cast<double*>(state.data());
  for (std::size_t base = 0; base < state.size(); base += 2 * stride)
    for (std::size_t j = base; j < base + stride; j += 2) {
      double* p0 = d + 2 * j;
      double* p1 = d + 2 * (j + stride);
      const __m256d a0 = _mm256_loadu_pd(p0), a1 = _mm256_loadu_pd(p1);
      _mm256_storeu_pd(p0, _mm256_add_pd(cmul(re[0], im[0], a0), cmul(re[1], im[1], a1)));
      _mm256_storeu_pd(p1, _mm256_add_pd(cmul(re[2], im[2], a0), cmul(re[3], im[3], a1)));
    }
}

void norm_sq_avx2(std::span<const Complex> state, std::span<double> out) {
  const double* d = reinterpret_cast<const double*>(state.data());
  std::size_t i = 0;
  for (; i + 4 <= state.size(); i += 4) {
    const __m256d a = _mm256_loadu_pd(d + 2 * i), b = _mm256_loadu_pd(d + 2 * i + 4);
    // hadd -> [|a0|^2, |b0|^2, |a1|^2, |b1|^2]; reorder to amplitudes i..i+3.
    const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
    _mm256_storeu_pd(out.data() + i, _mm256_permute4x64_pd(h, 0b11011000));
  }
  for (; i < state.size(); ++i) {
    const double r = state[i].real(), m = state[i].imag();
    out[i] = r * r + m * m;
  }
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable t{philox_fill_avx2, count_below_avx2, sum_avx2,
                             abs_diff_sum_avx2, apply_1q_avx2,   norm_sq_avx2};
  return t;
}

}  // namespace mclab::kernels
