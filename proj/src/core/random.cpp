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

#include "mclab/core/random.hpp"

#include <array>

#include "mclab/core/error.hpp"

namespace mclab {

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

RandomStream RandomStream::substream(std::initializer_list<std::uint64_t> labels) const {
  std::uint64_t s = stream_;
  for (auto l : labels) s = derive_stream(s, l);
  return {seed_, s};
}

std::uint64_t RandomStream::next() {
  if ((pos_ & 1u) == 0) kernels::philox_fill(key(), stream_, pos_ / 2, std::span<std::uint64_t>(buf_, 2));
  return buf_[pos_++ & 1u];
}

void RandomStream::fill(std::span<std::uint64_t> out) {
  std::size_t i = 0;
  if ((pos_ & 1u) != 0 && i < out.size()) out[i++] = next();
  std::size_t whole = (out.size() - i) & ~std::size_t{1};
  if (whole > 0) {
    kernels::philox_fill(key(), stream_, pos_ / 2, out.subspan(i, whole));
    pos_ += whole;
    i += whole;
  }
  while (i < out.size()) out[i++] = next();
}

std::uint64_t RandomStream::uniform_below(std::uint64_t bound) {
  if (bound == 0) fail(ErrorCode::kConfigInvalid, "uniform_below(0)");
  if ((bound & (bound - 1)) == 0) return next() & (bound - 1);
  const std::uint64_t limit = -bound % bound;  // 2^64 mod bound
  for (;;) {
    std::uint64_t u = next();
    if (u >= limit) return u % bound;
  }
}

ExactBernoulli::ExactBernoulli(const Rational& p) : p_(p) {
  if (p < 0 || p > 1) fail(ErrorCode::kConfigInvalid, "Bernoulli parameter outside [0,1]: " + p.get_str());
  if (p == 1) {
    always_ = true;
    return;
  }
  if (p == 0) {
    never_ = true;
    return;
  }
  Rational scaled = p * pow2(64);
  BigInt t = scaled.get_num() / scaled.get_den();
  threshold_ = mpz_get_ui(t.get_mpz_t());
  remainder_ = scaled - Rational(t);
}

bool ExactBernoulli::resolve_tie(RandomStream& ties) const {
  // Each round exposes 64 more bits of the uniform real behind the tie.
  Rational r = remainder_;
  for (;;) {
    if (r == 0) return false;
    Rational scaled = r * pow2(64);
    BigInt t = scaled.get_num() / scaled.get_den();
    std::uint64_t thr = mpz_get_ui(t.get_mpz_t());
    std::uint64_t u = ties.next();
    if (u < thr) return true;
    if (u > thr) return false;
    r = scaled - Rational(t);
  }
}

bool ExactBernoulli::draw(RandomStream& main, RandomStream& ties) const {
  if (always_) return true;
  if (never_) return false;
  std::uint64_t u = main.next();
  if (u < threshold_) return true;
  if (u > threshold_) return false;
  return resolve_tie(ties);
}

std::uint64_t ExactBernoulli::count(std::uint64_t n, RandomStream& main, RandomStream& ties) const {
  if (always_) return n;
  if (never_) return 0;
  constexpr std::size_t kChunk = 4096;
  std::array<std::uint64_t, kChunk> buf;
  std::uint64_t ones = 0;
  while (n > 0) {
    std::size_t take = n < kChunk ? static_cast<std::size_t>(n) : kChunk;
    std::span<std::uint64_t> words(buf.data(), take);
    main.fill(words);
    auto [lt, eq] = kernels::count_below(words, threshold_);
    ones += lt;
    for (std::uint64_t k = 0; k < eq; ++k) ones += resolve_tie(ties) ? 1 : 0;
    n -= take;
  }
  return ones;
}

}  // namespace mclab
