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

#include "mclab/sampler/sampler.hpp"

#include <cmath>
#include <map>

#include "mclab/core/error.hpp"

namespace mclab {

TableSampler::TableSampler(BitStringDist dist, std::string name) : dist_(std::move(dist)), name_(std::move(name)) {
  if (!dist_.exact()) dist_ = BitStringDist::from_dense(dist_.n(), dist_.dense_exact());
  const ChainFactorization chain(dist_);
  coins_.resize(dist_.n());
  for (unsigned i = 0; i < dist_.n(); ++i) {
    coins_[i].reserve(std::size_t{1} << i);
    for (std::uint64_t p = 0; p < (std::uint64_t{1} << i); ++p)
      coins_[i].emplace_back(chain.conditional_one(i, BitString(p, i)));
  }
}

BitString TableSampler::sample(RandomStream& rng) const {
  std::uint64_t v = 0;
  for (unsigned i = 0; i < dist_.n(); ++i) v = (v << 1) | (coins_[i][v].draw(rng, rng) ? 1u : 0u);
  return BitString(v, dist_.n());
}

SeededSampler::SeededSampler(std::string name, unsigned seed_len, unsigned n, Eval eval)
    : name_(std::move(name)), t_(seed_len), n_(n), eval_(std::move(eval)) {
  if (t_ > BitString::kMaxLen || n_ > BitString::kMaxLen) fail(ErrorCode::kConfigInvalid, "seeded sampler above 64 bits");
}

BitString SeededSampler::eval(const BitString& seed) const {
  if (seed.size() != t_) fail(ErrorCode::kLengthMismatch, "seed length != t");
  BitString x = eval_(seed);
  if (x.size() != n_) fail(ErrorCode::kLengthMismatch, "seeded eval returned wrong length");
  return x;
}

BitString SeededSampler::sample(RandomStream& rng) const {
  const std::uint64_t r = t_ == 64 ? rng.next() : (t_ == 0 ? 0 : rng.next() >> (64 - t_));
  return eval(BitString(r, t_));
}

std::optional<BitStringDist> SeededSampler::exact_dist() const {
  if (t_ > kMaxEnumeratedSeed) return std::nullopt;
  return seeded_exact_dist();
}

BitStringDist SeededSampler::seeded_exact_dist() const {
  if (t_ > kMaxEnumeratedSeed) fail(ErrorCode::kBudgetExceeded, "seed enumeration above t = 20");
  std::map<std::uint64_t, std::uint64_t> counts;
  for (std::uint64_t r = 0; r < (std::uint64_t{1} << t_); ++r) ++counts[eval(BitString(r, t_)).value()];
  const Rational unit = pow2(-static_cast<long>(t_));
  std::vector<BitStringDist::Entry> entries;
  for (auto [x, c] : counts) entries.emplace_back(BitString(x, n_), Rational(BigInt(std::to_string(c))) * unit);
  return BitStringDist::from_entries(n_, entries);
}

SeededSampler SeededSampler::identity(unsigned n) {
  return SeededSampler("identity", n, n, [](const BitString& r) { return r; });
}

SeededSampler SeededSampler::constant(const BitString& z, unsigned seed_len) {
  return SeededSampler("constant", seed_len, z.size(), [z](const BitString&) { return z; });
}

SeededSampler SeededSampler::parity_prefix(unsigned seed_len, unsigned n) {
  if (n == 0) fail(ErrorCode::kConfigInvalid, "parity_prefix needs n >= 1");
  return SeededSampler("parity_prefix", seed_len, n, [seed_len, n](const BitString& r) {
    std::uint64_t v = 0;
    for (unsigned j = 0; j < n; ++j) {
      const unsigned len = static_cast<unsigned>((static_cast<std::uint64_t>(j + 1) * seed_len + n - 1) / n);
      v = (v << 1) | (r.prefix(len).popcount() & 1u);
    }
    return BitString(v, n);
  });
}

SeededSampler SeededSampler::and_blocks(unsigned seed_len, unsigned n) {
  if (n == 0 || seed_len < n) fail(ErrorCode::kConfigInvalid, "and_blocks needs t >= n >= 1");
  const unsigned b = seed_len / n;
  return SeededSampler("and_blocks", seed_len, n, [b, n](const BitString& r) {
    std::uint64_t v = 0;
    for (unsigned j = 0; j < n; ++j) {
      bool all = true;
      for (unsigned k = 0; k < b; ++k) all = all && r[j * b + k];
      v = (v << 1) | (all ? 1u : 0u);
    }
    return BitString(v, n);
  });
}

SeededSampler SeededSampler::popcount(unsigned seed_len, unsigned n) {
  return SeededSampler("popcount", seed_len, n, [n](const BitString& r) { return BitString(r.popcount(), n); });
}

SeededSampler SeededSampler::truth_table(unsigned seed_len, unsigned n, std::vector<BitString> outputs) {
  if (seed_len > kMaxEnumeratedSeed || outputs.size() != (std::size_t{1} << seed_len))
    fail(ErrorCode::kConfigInvalid, "truth table must list 2^t outputs with t <= 20");
  for (const auto& x : outputs)
    if (x.size() != n) fail(ErrorCode::kLengthMismatch, "truth table output length != n");
  return SeededSampler("truth_table", seed_len, n,
                       [table = std::move(outputs)](const BitString& r) { return table[r.value()]; });
}

Rational empirical_check(const Sampler& s, std::uint64_t shots, std::uint64_t seed) {
  auto exact = s.exact_dist();
  if (!exact) fail(ErrorCode::kBudgetExceeded, "empirical_check needs an exact distribution");
  if (shots == 0) fail(ErrorCode::kConfigInvalid, "empirical_check with zero shots");
  RandomStream rng(seed);
  std::map<std::uint64_t, std::uint64_t> hist;
  for (std::uint64_t k = 0; k < shots; ++k) ++hist[s.sample(rng).value()];
  // SD = sum over strings of max(empirical − exact, 0); only sampled strings can contribute.
  const Rational inv(BigInt(1), BigInt(std::to_string(shots)));
  Rational sd(0);
  for (auto [x, c] : hist) {
    Rational diff = Rational(BigInt(std::to_string(c))) * inv - exact->prob(BitString(x, s.n()));
    if (sgn(diff) > 0) sd += diff;
  }
  return sd;
}

double empirical_threshold(unsigned n, std::uint64_t shots) {
  return 3.0 * std::sqrt(std::ldexp(1.0, static_cast<int>(n)) / static_cast<double>(shots));
}

}  // namespace mclab
