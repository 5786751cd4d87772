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
#include <memory>
#include <optional>

#include "mclab/core/random.hpp"
#include "mclab/dist/bitstring_dist.hpp"

namespace mclab {

/// Next-bit sampler over n-bit strings. Indices are 0-based: next_bit(i, p)
/// samples bit i given the i-bit prefix p.
class Extrapolator {
 public:
  virtual ~Extrapolator() = default;

  virtual unsigned n() const = 0;
  virtual bool next_bit(unsigned i, const BitString& prefix, RandomStream& rng) const = 0;
  /// Advertised per-index statistical slack.
  virtual Rational slack() const = 0;
  /// Pr[next_bit(i, prefix) = 1] when the extrapolator is tabular.
  virtual std::optional<Rational> conditional_one(unsigned i, const BitString& prefix) const;
  /// Whether the prefix has zero mass under the modelled distribution.
  virtual bool zero_mass_prefix(const BitString& prefix) const;

  /// Ones among `reps` independent next_bit calls. The default loops
  /// next_bit; tabular implementations batch through ExactBernoulli.
  virtual std::uint64_t count_ones(unsigned i, const BitString& prefix, std::uint64_t reps, RandomStream& rng) const;

  bool tabular() const { return n() == 0 || conditional_one(0, BitString()).has_value(); }
};

/// Samples the true conditionals of an exact table; slack 0.
class ExactExtrapolator final : public Extrapolator {
 public:
  explicit ExactExtrapolator(const BitStringDist& d);

  unsigned n() const override { return chain_.n(); }
  bool next_bit(unsigned i, const BitString& prefix, RandomStream& rng) const override;
  Rational slack() const override { return Rational(0); }
  std::optional<Rational> conditional_one(unsigned i, const BitString& prefix) const override;
  bool zero_mass_prefix(const BitString& prefix) const override { return chain_.zero_mass(prefix); }
  std::uint64_t count_ones(unsigned i, const BitString& prefix, std::uint64_t reps, RandomStream& rng) const override;

  const ChainFactorization& chain() const noexcept { return chain_; }

 private:
  ChainFactorization chain_;
};

enum class NoiseMode { kToward0, kToward1, kRandom, kConcentrated };

struct NoiseSpec {
  NoiseMode mode = NoiseMode::kToward1;
  Rational epsilon{0};
  std::uint64_t seed = 0;  // kRandom: sign pattern
  // kConcentrated: the one perturbed (index, prefix).
  unsigned target_index = 0;
  BitString target_prefix;

  static NoiseSpec shift(NoiseMode mode, Rational epsilon, std::uint64_t seed = 0) {
    NoiseSpec s;
    s.mode = mode;
    s.epsilon = std::move(epsilon);
    s.seed = seed;
    return s;
  }
  static NoiseSpec concentrated(Rational epsilon, unsigned index, BitString prefix) {
    NoiseSpec s = shift(NoiseMode::kConcentrated, std::move(epsilon));
    s.target_index = index;
    s.target_prefix = prefix;
    return s;
  }
};

/// True conditionals shifted by epsilon and clamped to [0, 1].
///
/// kToward0 / kToward1 / kRandom shift every conditional and advertise
/// slack epsilon. kConcentrated shifts only (target_index, target_prefix),
/// toward 1 when room allows and toward 0 otherwise, and advertises the
/// exact resulting per-index statistical distance.
class NoisyExtrapolator final : public Extrapolator {
 public:
  NoisyExtrapolator(const BitStringDist& d, NoiseSpec spec);

  unsigned n() const override { return chain_.n(); }
  bool next_bit(unsigned i, const BitString& prefix, RandomStream& rng) const override;
  Rational slack() const override { return slack_; }
  std::optional<Rational> conditional_one(unsigned i, const BitString& prefix) const override;
  bool zero_mass_prefix(const BitString& prefix) const override { return chain_.zero_mass(prefix); }
  std::uint64_t count_ones(unsigned i, const BitString& prefix, std::uint64_t reps, RandomStream& rng) const override;

  const NoiseSpec& spec() const noexcept { return spec_; }

 private:
  ChainFactorization chain_;
  NoiseSpec spec_;
  std::vector<std::vector<Rational>> cond_;  // [i][prefix value], perturbed
  Rational slack_;
};

/// Σ_prefix Pr_D[prefix] · |ext(i, prefix) − D(i, prefix)|: the statistical
/// distance between (y_<i, ext bit) and (y_<i, y_i). NotTabular otherwise.
Rational per_index_sd(const BitStringDist& d, const Extrapolator& ext, unsigned i);

/// Exact mass of y ← D with |ext(i, y_<i) − D(i, y_<i)| > b·slack for some i.
Rational verify_claim_invert_is_high(const BitStringDist& d, const Extrapolator& ext, const Rational& b);

}  // namespace mclab
