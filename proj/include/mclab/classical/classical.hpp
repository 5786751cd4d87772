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
#include <string>
#include <unordered_map>
#include <vector>

#include "mclab/dist/bitstring_dist.hpp"
#include "mclab/extrapolate/extrapolator.hpp"
#include "mclab/sampler/sampler.hpp"

namespace mclab {

/// f_n(r, c) = (i, x_1..x_i) with x = S(1^n; r) and i = c + 1 for a fixed
/// width code c; codes with i outside [1, n−1] map to the sentinel.
class FnFamily {
 public:
  struct Image {
    bool sentinel = false;
    unsigned i = 0;       // number of output bits, 1..n−1
    BitString prefix;     // x_1..x_i
    friend bool operator==(const Image&, const Image&) = default;
  };
  struct Preimage {
    BitString seed;
    std::uint64_t code = 0;
    friend bool operator==(const Preimage&, const Preimage&) = default;
  };

  /// ConfigInvalid unless n >= 2.
  explicit FnFamily(SeededSampler sampler);

  const SeededSampler& sampler() const noexcept { return s_; }
  unsigned n() const noexcept { return s_.n(); }
  unsigned t() const noexcept { return s_.seed_len(); }
  unsigned index_bits() const noexcept { return w_; }  // ceil(log2(n − 1))
  unsigned m() const noexcept { return t() + w_; }
  std::uint64_t code_of(unsigned i) const;  // IndexOutOfRange unless 1 <= i <= n − 1

  Image eval(const Preimage& pre) const;
  /// Input bits are seed || code.
  Image eval(const BitString& input) const;

 private:
  SeededSampler s_;
  unsigned w_;
};

/// Distributional inverter for f_n.
class Inverter {
 public:
  virtual ~Inverter() = default;
  virtual std::string name() const = 0;
  /// Advertised SD between (input, f(input)) and (R(f(input)), f(input)).
  virtual Rational slack() const = 0;
  virtual FnFamily::Preimage invert(const FnFamily::Image& image, RandomStream& rng) const = 0;
  /// Exact output law Pr[R(image) = pre].
  virtual Rational prob(const FnFamily::Image& image, const FnFamily::Preimage& pre) const = 0;
  /// Pr[bit `image.i` of S(r′) = 1] for (r′, c′) <- R(image).
  virtual Rational conditional_one(const FnFamily::Image& image) const = 0;
  /// Seeds r with f(r, code(i)) = image, in value order; empty off-support.
  virtual const std::vector<std::uint32_t>& posterior_seeds(const FnFamily::Image& image) const = 0;
};

/// Exact posterior sampling by seed enumeration, mixed with probability delta
/// toward the uniform law on the domain. delta = 0 is the brute-force
/// inverter and throws NoPreimage on images with no preimage.
class PosteriorInverter final : public Inverter {
 public:
  /// BudgetExceeded when t > SeededSampler::kMaxEnumeratedSeed.
  PosteriorInverter(const FnFamily& family, Rational delta = Rational(0));

  std::string name() const override { return delta_ == 0 ? "brute_force" : "planted_error"; }
  Rational slack() const override { return delta_; }
  const Rational& delta() const noexcept { return delta_; }
  FnFamily::Preimage invert(const FnFamily::Image& image, RandomStream& rng) const override;
  Rational prob(const FnFamily::Image& image, const FnFamily::Preimage& pre) const override;
  Rational conditional_one(const FnFamily::Image& image) const override;
  const std::vector<std::uint32_t>& posterior_seeds(const FnFamily::Image& image) const override;
  /// Pr_r[bit j of S(r) = 1] over uniform seeds.
  const Rational& marginal_one(unsigned j) const { return marginal_[j]; }

 private:
  struct Cell {
    std::vector<std::uint32_t> seeds;
    std::uint64_t next_ones = 0;  // seeds whose output has bit i = 1
  };
  const Cell* cell(const FnFamily::Image& image) const;
  std::uint64_t posterior_size(const FnFamily::Image& image) const;

  const FnFamily& f_;
  Rational delta_;
  std::vector<std::unordered_map<std::uint64_t, Cell>> cells_;  // [i][prefix value]
  std::vector<Rational> marginal_;
  std::vector<std::uint32_t> empty_;
};

std::unique_ptr<PosteriorInverter> brute_force_inverter(const FnFamily& family);
std::unique_ptr<PosteriorInverter> planted_error_inverter(const FnFamily& family, const Rational& delta);

/// Next bit of S(1^n; r′) for r′ from the inverter; bit 0 from a fresh seed.
class ClassicalExt final : public Extrapolator {
 public:
  ClassicalExt(const FnFamily& family, const Inverter& inverter);
  unsigned n() const override { return f_.n(); }
  bool next_bit(unsigned i, const BitString& prefix, RandomStream& rng) const override;
  Rational slack() const override { return inv_.slack(); }
  std::optional<Rational> conditional_one(unsigned i, const BitString& prefix) const override;
  bool zero_mass_prefix(const BitString& prefix) const override;

 private:
  const FnFamily& f_;
  const Inverter& inv_;
  Rational first_bit_;
};

/// Truth-table sampler over t-bit seeds realizing d exactly: seeds are
/// assigned to strings in value order. ConfigInvalid unless every
/// probability is a multiple of 2^−t.
SeededSampler dyadic_sampler(const BitStringDist& d, unsigned t);

/// Whether ext's conditionals equal chain's on every positive-mass prefix.
bool conditional_table_matches(const Extrapolator& ext, const ChainFactorization& chain);

struct ChainIndexRow {
  unsigned i = 0;               // 1-based prefix length
  Rational sd_s;                // SD(S_{<=i+1}, (S_{<=i}, Ext))
  Rational q_to_s;              // SD(Q_{<=i+1}, S_{<=i+1})
  Rational ext_shift;           // SD((S_{<=i}, Ext), (Q_{<=i}, Ext))
  Rational sd_q;                // SD(Q_{<=i+1}, (Q_{<=i}, Ext))
  Rational triangle_residual;   // q_to_s + sd_s + ext_shift − sd_q, >= 0
  bool averaging_ok = false;    // sd_s <= (n − 1)·t4
  bool planted_ok = false;      // sd_s <= (n − 1)·δ_R
};

struct SdChainReport {
  unsigned n = 0;
  unsigned k = 0;
  Rational delta;               // δ_R
  Rational t1;                  // SD(((r, i), f), (R(f), f))
  Rational t2;                  // t1 with x_{i+1} and Ext appended; equals t1
  Rational t3;                  // SD((i, x_{<=i}, x_{i+1}), (i, x_{<=i}, Ext))
  Rational t4;                  // (1/(n−1))·Σ_i sd_s
  Rational q_to_s;              // SD(Q, S)
  std::vector<ChainIndexRow> rows;
  bool t1_within_slack = false; // t1 <= δ_R
  bool data_processing = false; // t3 <= t2 <= t1
  bool averaging = false;       // t4 <= t3
  bool triangle = false;        // every residual >= 0
  /// Whether t1 <= n^−k and SD(Q, S) <= n^−k, so the schema applies.
  bool schema_applies = false;
  bool schema_ok = false;       // every sd_q <= 2/n^k + 1/n^(k−1)
  bool all_ok() const;
};

/// Exact SD chain for (f_n, R) against target q (default: S's own table).
/// Off-support prefixes of q propagate NoPreimage through a brute-force R.
SdChainReport verify_sd_chain(const FnFamily& family, const Inverter& inverter, unsigned k,
                              const std::optional<BitStringDist>& q = std::nullopt);

}  // namespace mclab
