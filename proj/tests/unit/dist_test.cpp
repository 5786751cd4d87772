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

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "mclab/core/error.hpp"
#include "mclab/dist/bitstring_dist.hpp"
#include "mclab/dist/io.hpp"
#include "mclab/dist/registry.hpp"
#include "mclab/sampler/corpus.hpp"

namespace mclab {
namespace {

// Reference: binomial coefficient by Pascal recursion.
BigInt choose(unsigned n, unsigned k) {
  std::vector<BigInt> row(n + 1, 0);
  row[0] = 1;
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = i; j >= 1; --j) row[j] += row[j - 1];
  return row[k];
}

// Reference: SD of Bernoulli(p)^{⊗m} from uniform, grouped by Hamming weight.
Rational bernoulli_power_sd(const Rational& p, unsigned m) {
  const Rational u = pow2(-static_cast<long>(m));
  Rational sd(0);
  for (unsigned k = 0; k <= m; ++k) {
    Rational q = pow(p, k) * pow(Rational(1 - p), m - k);
    if (q > u) sd += Rational(choose(m, k)) * (q - u);
  }
  return sd;
}

BitStringDist skewed(unsigned n) {
  std::vector<Rational> probs(std::size_t{1} << n);
  Rational total(0);
  for (std::size_t v = 0; v < probs.size(); ++v) {
    probs[v] = Rational(static_cast<long>((v * 7 + 3) % 11));
    total += probs[v];
  }
  for (auto& p : probs) p /= total;
  return BitStringDist::from_dense(n, probs);
}

TEST(BitStringDistTest, UniformAndPointMass) {
  auto u = BitStringDist::uniform(4);
  EXPECT_EQ(u.prob(BitString(5, 4)), Rational(1, 16));
  EXPECT_EQ(u.total_mass(), 1);
  auto pm = BitStringDist::point_mass(BitString::parse("101"));
  EXPECT_EQ(pm.prob(BitString::parse("101")), 1);
  EXPECT_EQ(pm.support_size(), 1u);
}

TEST(BitStringDistTest, FromEntriesValidates) {
  EXPECT_THROW(BitStringDist::from_entries(2, {{BitString::parse("00"), Rational(1, 2)}}), Error);
  EXPECT_THROW(BitStringDist::from_entries(2, {{BitString::parse("0"), Rational(1)}}), Error);
  EXPECT_THROW(BitStringDist::from_entries(1, {{BitString::parse("0"), Rational(3, 2)},
                                                {BitString::parse("1"), Rational(-1, 2)}}),
               Error);
  auto d = BitStringDist::from_entries(
      2, {{BitString::parse("01"), Rational(1, 4)}, {BitString::parse("01"), Rational(1, 4)},
          {BitString::parse("10"), Rational(1, 2)}});
  EXPECT_EQ(d.prob(BitString::parse("01")), Rational(1, 2));
}

TEST(BitStringDistTest, FloatModeTolerance) {
  EXPECT_NO_THROW(BitStringDist::from_float(1, {0.5, 0.5 + 1e-13}));
  EXPECT_THROW(BitStringDist::from_float(1, {0.5, 0.5 + 1e-9}), Error);
}

TEST(BitStringDistTest, SparseAboveDenseCap) {
  auto d = BitStringDist::point_mass(BitString::zeros(20));
  EXPECT_FALSE(d.dense());
  EXPECT_EQ(d.prob(BitString::zeros(20)), 1);
  EXPECT_EQ(d.prob(BitString::ones(20)), 0);
}

TEST(StatisticalDistanceTest, MatchesDirectSum) {
  auto d = skewed(5);
  auto u = BitStringDist::uniform(5);
  Rational ref(0);
  for (std::uint64_t v = 0; v < 32; ++v) {
    Rational diff = d.prob(BitString(v, 5)) - u.prob(BitString(v, 5));
    ref += diff >= 0 ? diff : Rational(-diff);
  }
  ref /= 2;
  EXPECT_EQ(statistical_distance(d, u), ref);
  EXPECT_NEAR(statistical_distance_double(d, u), ref.get_d(), 1e-15);
  EXPECT_EQ(statistical_distance(d, d), 0);
}

TEST(StatisticalDistanceTest, MetricProperties) {
  auto a = skewed(4), b = BitStringDist::uniform(4), c = BitStringDist::bernoulli_product(4, Rational(1, 3));
  EXPECT_EQ(statistical_distance(a, b), statistical_distance(b, a));
  EXPECT_LE(statistical_distance(a, c), statistical_distance(a, b) + statistical_distance(b, c));
  EXPECT_GE(statistical_distance(a, c), 0);
  EXPECT_LE(statistical_distance(a, c), 1);
}

TEST(MixtureTest, WeightsProbabilities) {
  auto d = BitStringDist::point_mass(BitString::zeros(3));
  auto u = BitStringDist::uniform(3);
  auto m = mixture(d, u, Rational(1, 4));
  EXPECT_EQ(m.prob(BitString::zeros(3)), Rational(1, 4) + Rational(3, 4) * Rational(1, 8));
  EXPECT_EQ(m.total_mass(), 1);
}

TEST(ProductDistTest, SdMatchesMaterializedTable) {
  for (unsigned copies : {1u, 2u, 3u, 4u}) {
    auto base = skewed(3);
    ProductDist pd(base, copies);
    auto full = parallel_repeat(base, copies);
    EXPECT_EQ(pd.sd_to_uniform(), statistical_distance(full, BitStringDist::uniform(3 * copies))) << copies;
    EXPECT_EQ(pd.materialize(), full);
  }
}

TEST(ProductDistTest, BernoulliPowerMatchesBinomialSum) {
  auto base = BitStringDist::bernoulli_product(2, Rational(3, 4));
  for (unsigned copies : {1u, 2u, 4u, 8u}) {
    ProductDist pd(base, copies);
    EXPECT_EQ(pd.sd_to_uniform(), bernoulli_power_sd(Rational(3, 4), 2 * copies)) << copies;
  }
  // Frozen reference value at B = 8.
  EXPECT_NEAR(ProductDist(base, 8).sd_to_uniform().get_d(), 0.70529, 5e-6);
}

TEST(ProductDistTest, ParallelRepeatBudget) {
  EXPECT_THROW(parallel_repeat(BitStringDist::uniform(5), 5), Error);
}

TEST(ChainTest, ReconstructsEveryString) {
  for (const auto& e : corpus(8)) {
    ChainFactorization ch(e.dist);
    for (std::uint64_t v = 0; v < 256; ++v) {
      BitString y(v, 8);
      ASSERT_EQ(ch.reconstruct(y), e.dist.prob(y)) << e.name << " " << y.str();
    }
  }
}

TEST(ChainTest, ZeroMassPrefixConvention) {
  auto d = BitStringDist::point_mass(BitString::parse("0110"));
  ChainFactorization ch(d);
  EXPECT_TRUE(ch.convention_exercised());
  EXPECT_TRUE(ch.zero_mass(BitString::parse("1")));
  EXPECT_EQ(ch.conditional_one(1, BitString::parse("1")), Rational(1, 2));
  EXPECT_EQ(ch.conditional_one(1, BitString::parse("0")), 1);
  EXPECT_FALSE(ChainFactorization(BitStringDist::uniform(4)).convention_exercised());
}

TEST(ChainTest, ConditionalMassBoundReference) {
  // Reference computed from raw prefix masses.
  auto d = skewed(6);
  for (long a : {1L, 2L, 4L, 16L}) {
    Rational ref(0);
    const Rational cut = Rational(1, 2 * a);
    d.for_each_support([&](const BitString& y, const Rational& p) {
      for (unsigned i = 1; i <= 6; ++i) {
        Rational num = marginal(d, y.prefix(i)), den = marginal(d, y.prefix(i - 1));
        if (num / den < cut) {
          ref += p;
          break;
        }
      }
    });
    EXPECT_EQ(conditional_mass_bound(d, Rational(a)), ref) << a;
  }
}

TEST(ChainTest, ConditionalMassBoundAtMostNOverA) {
  for (unsigned n : {6u, 8u}) {
    for (const auto& e : corpus(n)) {
      for (long a : {4L, 16L, 64L}) {
        EXPECT_LE(conditional_mass_bound(e.dist, Rational(a)), Rational(n) / a) << e.name;
      }
    }
  }
}

TEST(RegistryTest, HighSetMatchesSquaredComparison) {
  auto d = skewed(6);
  for (unsigned s = 2; s <= 8; ++s) {
    for (unsigned delta = 0; delta <= 4; ++delta) {
      std::vector<BitString> ref;
      for (std::uint64_t v = 0; v < 64; ++v) {
        BitString y(v, 6);
        Rational lhs = d.prob(y) * Rational(100, 99) * pow2(s);
        if (lhs * lhs >= pow2(delta)) ref.push_back(y);
      }
      EXPECT_EQ(high_set(d, s, delta), ref) << s << " " << delta;
    }
  }
}

TEST(RegistryTest, MemoizedHighIsStable) {
  CorpusRegistry reg;
  const auto* h1 = reg.high(kCorpusBernoulli34, 8, 6, 2);
  const auto* h2 = reg.high(kCorpusBernoulli34, 8, 6, 2);
  ASSERT_NE(h1, nullptr);
  EXPECT_EQ(h1, h2);
  EXPECT_EQ(reg.high(999, 8, 6, 2), nullptr);
  reg.add(1000, BitStringDist::uniform(3));
  EXPECT_THROW(reg.add(1000, BitStringDist::uniform(3)), Error);
  EXPECT_THROW(reg.add(5, BitStringDist::uniform(3)), Error);
}

TEST(DistIoTest, RoundTripExactAndFloat) {
  auto d = skewed(4);
  EXPECT_EQ(dist_from_json(dist_to_json(d)), d);
  auto f = BitStringDist::from_float(2, {0.125, 0.375, 0.25, 0.25});
  EXPECT_EQ(dist_from_json(dist_to_json(f)), f);
  EXPECT_THROW(dist_from_json("{\"n\": 2}"), Error);
  EXPECT_THROW(dist_from_json("not json"), Error);
}

TEST(DistIoTest, FileRoundTrip) {
  auto path = (std::filesystem::temp_directory_path() / "mclab_dist_io.json").string();
  auto d = BitStringDist::bernoulli_product(3, Rational(2, 5));
  write_dist_file(d, path);
  EXPECT_EQ(read_dist_file(path), d);
  std::remove(path.c_str());
}

}  // namespace
}  // namespace mclab
