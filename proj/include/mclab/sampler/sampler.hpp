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

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mclab/core/random.hpp"
#include "mclab/dist/bitstring_dist.hpp"

namespace mclab {

/// An n-bit output sampler. sample() is a deterministic function of the
/// stream state; exact_dist() is available up to the backend's cap.
class Sampler {
 public:
  virtual ~Sampler() = default;
  virtual unsigned n() const = 0;
  virtual BitString sample(RandomStream& rng) const = 0;
  virtual std::optional<BitStringDist> exact_dist() const = 0;
  virtual std::string name() const = 0;
};

/// Samples an exact table bit by bit from its chain factorization, each
/// conditional drawn with ExactBernoulli.
class TableSampler final : public Sampler {
 public:
  explicit TableSampler(BitStringDist dist, std::string name = "table");

  unsigned n() const override { return dist_.n(); }
  BitString sample(RandomStream& rng) const override;
  std::optional<BitStringDist> exact_dist() const override { return dist_; }
  std::string name() const override { return name_; }

 private:
  BitStringDist dist_;
  std::string name_;
  std::vector<std::vector<ExactBernoulli>> coins_;  // [level][prefix value]
};

/// S(1^n; r): deterministic map from t-bit seeds to n-bit outputs.
class SeededSampler final : public Sampler {
 public:
  static constexpr unsigned kMaxEnumeratedSeed = 20;

  using Eval = std::function<BitString(const BitString& seed)>;

  SeededSampler(std::string name, unsigned seed_len, unsigned n, Eval eval);

  static SeededSampler identity(unsigned n);
  static SeededSampler constant(const BitString& z, unsigned seed_len);
  /// x_j = parity of the first ceil((j + 1)·t / n) seed bits.
  static SeededSampler parity_prefix(unsigned seed_len, unsigned n);
  /// x_j = AND of seed block j; blocks of floor(t / n) bits.
  static SeededSampler and_blocks(unsigned seed_len, unsigned n);
  /// Binary popcount(r) mod 2^n, most significant bit first.
  static SeededSampler popcount(unsigned seed_len, unsigned n);
  /// outputs[r] for r in 0..2^t−1 (seed value order).
  static SeededSampler truth_table(unsigned seed_len, unsigned n, std::vector<BitString> outputs);

  unsigned seed_len() const noexcept { return t_; }
  unsigned n() const override { return n_; }
  BitString eval(const BitString& seed) const;
  BitString sample(RandomStream& rng) const override;
  std::optional<BitStringDist> exact_dist() const override;
  std::string name() const override { return name_; }

  /// Long-form exact table; BudgetExceeded above kMaxEnumeratedSeed.
  BitStringDist seeded_exact_dist() const;

 private:
  std::string name_;
  unsigned t_;
  unsigned n_;
  Eval eval_;
};

/// SD between the empirical histogram of `shots` samples and exact_dist().
Rational empirical_check(const Sampler& s, std::uint64_t shots, std::uint64_t seed);

/// Smoke threshold 3·sqrt(2^n / shots).
double empirical_threshold(unsigned n, std::uint64_t shots);

/// JSON: {"builtin": name, "t": int, "n": int[, "z": bits]} or
/// {"truth_table": {"t": int, "n": int, "outputs": [bits, ...]}}.
SeededSampler seeded_from_json(const std::string& text);

}  // namespace mclab
