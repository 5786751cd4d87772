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

#include "mclab/extrapolate/extrapolator.hpp"

#include <algorithm>

#include "mclab/core/error.hpp"

namespace mclab {

namespace {

constexpr std::uint64_t kTieLabel = 0x7469655F62697473ull;

RandomStream tie_stream(const RandomStream& rng) { return rng.substream({kTieLabel, rng.position()}); }

Rational clamp01(const Rational& r) {
  if (r < 0) return Rational(0);
  if (r > 1) return Rational(1);
  return r;
}

Rational abs_diff(const Rational& a, const Rational& b) { return a >= b ? Rational(a - b) : Rational(b - a); }

}  // namespace

std::optional<Rational> Extrapolator::conditional_one(unsigned, const BitString&) const { return std::nullopt; }

bool Extrapolator::zero_mass_prefix(const BitString&) const { return false; }

std::uint64_t Extrapolator::count_ones(unsigned i, const BitString& prefix, std::uint64_t reps,
                                       RandomStream& rng) const {
  std::uint64_t ones = 0;
  for (std::uint64_t r = 0; r < reps; ++r) ones += next_bit(i, prefix, rng) ? 1 : 0;
  return ones;
}

// ---- exact ---------------------------------------------------------------

ExactExtrapolator::ExactExtrapolator(const BitStringDist& d) : chain_(d) {}

std::optional<Rational> ExactExtrapolator::conditional_one(unsigned i, const BitString& prefix) const {
  return chain_.conditional_one(i, prefix);
}

bool ExactExtrapolator::next_bit(unsigned i, const BitString& prefix, RandomStream& rng) const {
  RandomStream ties = tie_stream(rng);
  return ExactBernoulli(chain_.conditional_one(i, prefix)).draw(rng, ties);
}

std::uint64_t ExactExtrapolator::count_ones(unsigned i, const BitString& prefix, std::uint64_t reps,
                                            RandomStream& rng) const {
  RandomStream ties = tie_stream(rng);
  return ExactBernoulli(chain_.conditional_one(i, prefix)).count(reps, rng, ties);
}

// ---- noisy ---------------------------------------------------------------

NoisyExtrapolator::NoisyExtrapolator(const BitStringDist& d, NoiseSpec spec) : chain_(d), spec_(std::move(spec)) {
  const unsigned n = chain_.n();
  if (spec_.epsilon < 0 || spec_.epsilon > 1) fail(ErrorCode::kConfigInvalid, "noise epsilon outside [0, 1]");
  if (spec_.mode == NoiseMode::kConcentrated &&
      (spec_.target_index >= n || spec_.target_prefix.size() != spec_.target_index))
    fail(ErrorCode::kLengthMismatch, "concentrated noise target prefix must have length target_index < n");
  RandomStream signs(spec_.seed, 0x6E6F697365ull);
  cond_.resize(n);
  for (unsigned i = 0; i < n; ++i) {
    const std::uint64_t prefixes = std::uint64_t{1} << i;
    cond_[i].resize(prefixes);
    for (std::uint64_t v = 0; v < prefixes; ++v) {
      const BitString p(v, i);
      const Rational& c = chain_.conditional_one(i, p);
      Rational shifted = c;
      switch (spec_.mode) {
        case NoiseMode::kToward0: shifted = c - spec_.epsilon; break;
        case NoiseMode::kToward1: shifted = c + spec_.epsilon; break;
        case NoiseMode::kRandom: {
          RandomStream s = signs.substream({i, v});
          shifted = s.coin() ? Rational(c + spec_.epsilon) : Rational(c - spec_.epsilon);
          break;
        }
        case NoiseMode::kConcentrated:
          if (i == spec_.target_index && p == spec_.target_prefix)
            shifted = c + spec_.epsilon <= 1 ? Rational(c + spec_.epsilon) : Rational(c - spec_.epsilon);
          break;
      }
      cond_[i][v] = clamp01(shifted);
    }
  }
  if (spec_.mode == NoiseMode::kConcentrated) {
    slack_ = 0;
    for (unsigned i = 0; i < n; ++i) slack_ = std::max(slack_, per_index_sd(d, *this, i));
  } else {
    slack_ = spec_.epsilon;
  }
}

std::optional<Rational> NoisyExtrapolator::conditional_one(unsigned i, const BitString& prefix) const {
  if (i >= cond_.size() || prefix.size() != i) fail(ErrorCode::kLengthMismatch, "prefix length must equal index");
  return cond_[i][prefix.value()];
}

bool NoisyExtrapolator::next_bit(unsigned i, const BitString& prefix, RandomStream& rng) const {
  RandomStream ties = tie_stream(rng);
  return ExactBernoulli(*conditional_one(i, prefix)).draw(rng, ties);
}

std::uint64_t NoisyExtrapolator::count_ones(unsigned i, const BitString& prefix, std::uint64_t reps,
                                            RandomStream& rng) const {
  RandomStream ties = tie_stream(rng);
  return ExactBernoulli(*conditional_one(i, prefix)).count(reps, rng, ties);
}

// ---- exact audits ---------------------------------------------------------

Rational per_index_sd(const BitStringDist& d, const Extrapolator& ext, unsigned i) {
  if (d.n() != ext.n()) fail(ErrorCode::kLengthMismatch, "extrapolator and distribution lengths differ");
  if (i >= d.n()) fail(ErrorCode::kIndexOutOfRange, "index outside [0, n)");
  ChainFactorization chain(d);
  Rational sd(0);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << i); ++v) {
    const BitString p(v, i);
    const Rational& w = chain.prefix_mass(p);
    if (w == 0) continue;
    auto e = ext.conditional_one(i, p);
    if (!e) fail(ErrorCode::kNotTabular, "per-index SD needs a tabular extrapolator");
    sd += w * abs_diff(*e, chain.conditional_one(i, p));
  }
  return sd;
}

Rational verify_claim_invert_is_high(const BitStringDist& d, const Extrapolator& ext, const Rational& b) {
  if (d.n() != ext.n()) fail(ErrorCode::kLengthMismatch, "extrapolator and distribution lengths differ");
  if (!ext.tabular()) fail(ErrorCode::kNotTabular, "violation mass needs a tabular extrapolator");
  ChainFactorization chain(d);
  const Rational limit = b * ext.slack();
  Rational mass(0);
  d.for_each_support([&](const BitString& y, const Rational& p) {
    for (unsigned i = 0; i < d.n(); ++i) {
      const BitString pre = y.prefix(i);
      if (abs_diff(*ext.conditional_one(i, pre), chain.conditional_one(i, pre)) > limit) {
        mass += p;
        return;
      }
    }
  });
  return mass;
}

}  // namespace mclab
