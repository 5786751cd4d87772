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

// Counter-based randomness. Every stochastic component draws from a
// RandomStream addressed by (seed, stream id); substreams are derived by
// hashing labels into the stream id, so results never depend on call order
// across independent consumers.

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "mclab/core/rational.hpp"
#include "mclab/kernels/kernels.hpp"

namespace mclab {

/// SplitMix64 finalizer; used only to derive stream ids.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_stream(std::uint64_t parent, std::uint64_t label) {
  return mix64(parent ^ mix64(label + 0x632BE59BD9B4E019ull));
}

/// Philox4x32-10 word stream. Word j of the stream is word (j mod 2) of block
/// j / 2, regardless of whether it was produced by next() or fill().
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_; }
  /// Number of 64-bit words consumed so far.
  std::uint64_t position() const noexcept { return pos_; }

  RandomStream substream(std::uint64_t label) const { return {seed_, derive_stream(stream_, label)}; }
  RandomStream substream(std::initializer_list<std::uint64_t> labels) const;

  std::uint64_t next();
  void fill(std::span<std::uint64_t> out);

  /// Uniform integer in [0, bound), bound >= 1; rejection sampling.
  std::uint64_t uniform_below(std::uint64_t bound);
  bool coin() { return (next() >> 63) != 0; }
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  kernels::PhiloxKey key() const {
    return {static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)};
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t pos_ = 0;
  std::uint64_t buf_[2] = {0, 0};
};

/// Exact Bernoulli(p) sampler for rational p in [0, 1].
///
/// A draw compares one uniform word u against T = floor(p * 2^64). Ties
/// (u == T) are refined against the fractional remainder using words from a
/// separate tie stream, so the result is exactly Bernoulli(p).
class ExactBernoulli {
 public:
  explicit ExactBernoulli(const Rational& p);

  const Rational& p() const noexcept { return p_; }
  bool degenerate() const noexcept { return always_ || never_; }
  std::uint64_t threshold() const noexcept { return threshold_; }

  bool draw(RandomStream& main, RandomStream& ties) const;

  /// Number of successes in `count` independent draws; consumes exactly
  /// `count` main-stream words unless p is 0 or 1.
  std::uint64_t count(std::uint64_t count, RandomStream& main, RandomStream& ties) const;

  /// Resolution of one tie: true with probability equal to the remainder.
  bool resolve_tie(RandomStream& ties) const;

 private:
  Rational p_;
  Rational remainder_;  // p * 2^64 - T, in [0, 1)
  std::uint64_t threshold_ = 0;
  bool always_ = false;
  bool never_ = false;
};

}  // namespace mclab
