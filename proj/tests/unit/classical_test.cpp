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

#include "mclab/classical/classical.hpp"
#include "mclab/core/error.hpp"
#include "mclab/sampler/corpus.hpp"

namespace mclab {
namespace {

TEST(FnFamilyTest, EncodingAndSentinel) {
  FnFamily f(SeededSampler::identity(6));  // n − 1 = 5, three index bits
  EXPECT_EQ(f.index_bits(), 3u);
  EXPECT_EQ(f.m(), 9u);
  auto img = f.eval(BitString::parse("101100" "010"));  // code 2 -> i = 3
  EXPECT_FALSE(img.sentinel);
  EXPECT_EQ(img.i, 3u);
  EXPECT_EQ(img.prefix.str(), "101");
  for (const char* code : {"101", "110", "111"}) EXPECT_TRUE(f.eval(BitString::parse(std::string("000000") + code)).sentinel);
  EXPECT_THROW(f.code_of(6), Error);
  FnFamily two(SeededSampler::identity(2));
  EXPECT_EQ(two.index_bits(), 0u);
  EXPECT_EQ(two.eval(BitString::parse("10")).prefix.str(), "1");
}

TEST(BruteForceInverterTest, InjectiveReturnsUniquePreimage) {
  FnFamily f(SeededSampler::identity(5));
  auto inv = brute_force_inverter(f);
  RandomStream rng(3, 0);
  const FnFamily::Image img{false, 4, BitString::parse("1101")};
  for (int j = 0; j < 20; ++j) {
    auto pre = inv->invert(img, rng);
    EXPECT_EQ(f.eval(pre), img);
  }
  // Identity with i = n − 1 leaves one free seed bit: two preimages.
  EXPECT_EQ(inv->posterior_seeds(img).size(), 2u);
  auto full = brute_force_inverter(f);
  EXPECT_EQ(full->slack(), 0);
}

TEST(BruteForceInverterTest, ConstantEvalIsUniform) {
  FnFamily f(SeededSampler::constant(BitString::parse("0110"), 4));
  auto inv = brute_force_inverter(f);
  RandomStream rng(11, 0);
  const FnFamily::Image img{false, 2, BitString::parse("01")};
  std::vector<std::uint64_t> hist(16, 0);
  const std::uint64_t draws = 16000;
  for (std::uint64_t j = 0; j < draws; ++j) ++hist[inv->invert(img, rng).seed.value()];
  double chi2 = 0;
  for (auto h : hist) chi2 += (h - 1000.0) * (h - 1000.0) / 1000.0;
  EXPECT_LT(chi2, 37.7);  // chi-square 15 dof, p = 0.001
  EXPECT_EQ(hist[0], 990u);   // frozen at seed 11
}

TEST(BruteForceInverterTest, EmptyPreimageThrows) {
  FnFamily f(SeededSampler::constant(BitString::parse("0110"), 4));
  auto inv = brute_force_inverter(f);
  RandomStream rng(1, 0);
  try {
    inv->invert({false, 2, BitString::parse("11")}, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoPreimage);
  }
}

TEST(BruteForceInverterTest, ExactLawMatchesEnumeration) {
  FnFamily f(SeededSampler::parity_prefix(5, 4));
  for (Rational delta : {Rational(0), Rational(1, 8)}) {
    PosteriorInverter inv(f, delta);
    for (unsigned i = 1; i < 4; ++i)
      for (std::uint64_t v = 0; v < (1u << i); ++v) {
        const FnFamily::Image img{false, i, BitString(v, i)};
        if (inv.posterior_seeds(img).empty()) continue;
        Rational total, ones;
        for (std::uint64_t in = 0; in < (1u << f.m()); ++in) {
          const FnFamily::Preimage pre{BitString(in >> f.index_bits(), 5), in & 3};
          const Rational p = inv.prob(img, pre);
          total += p;
          if (f.sampler().eval(pre.seed)[i]) ones += p;
        }
        EXPECT_EQ(total, 1);
        EXPECT_EQ(ones, inv.conditional_one(img));
      }
  }
}

TEST(ClassicalExtTest, IdentityIsFairCoinAndConstantIsDeterministic) {
  FnFamily id(SeededSampler::identity(6));
  auto inv = brute_force_inverter(id);
  ClassicalExt ext(id, *inv);
  for (unsigned i = 0; i < 6; ++i) EXPECT_EQ(*ext.conditional_one(i, BitString::zeros(i)), Rational(1, 2));
  FnFamily c(SeededSampler::constant(BitString::parse("1011"), 3));
  auto cinv = brute_force_inverter(c);
  ClassicalExt cext(c, *cinv);
  RandomStream rng(5, 0);
  EXPECT_EQ(cext.next_bit(0, BitString(), rng), true);
  EXPECT_EQ(cext.next_bit(2, BitString::parse("10"), rng), true);
  EXPECT_EQ(cext.next_bit(1, BitString::parse("1"), rng), false);
  EXPECT_TRUE(cext.zero_mass_prefix(BitString::parse("0")));
}

TEST(ClassicalExtTest, DyadicCorpusSamplerMatchesChain) {
  // Bernoulli(3/4)^6 has every probability in 2^-12 Z.
  auto d = *make_corpus_dist(kCorpusBernoulli34, 6);
  FnFamily f(dyadic_sampler(d, 12));
  EXPECT_EQ(f.sampler().seeded_exact_dist(), d);
  auto inv = brute_force_inverter(f);
  ClassicalExt ext(f, *inv);
  EXPECT_TRUE(conditional_table_matches(ext, chain_factorize(d)));
  EXPECT_THROW(dyadic_sampler(d, 11), Error);
}

TEST(SdChainTest, BruteForceTermsVanish) {
  for (const auto& s : {SeededSampler::parity_prefix(8, 6), SeededSampler::and_blocks(12, 6),
                        SeededSampler::popcount(8, 4)}) {
    FnFamily f(s);
    auto inv = brute_force_inverter(f);
    auto rep = verify_sd_chain(f, *inv, 2);
    EXPECT_EQ(rep.t1, 0) << s.name();
    EXPECT_EQ(rep.t3, 0);
    EXPECT_EQ(rep.t4, 0);
    for (const auto& row : rep.rows) EXPECT_EQ(row.sd_q, 0);
    EXPECT_TRUE(rep.all_ok());
  }
}

TEST(SdChainTest, PlantedErrorChain) {
  FnFamily f(SeededSampler::parity_prefix(8, 6));
  for (Rational delta : {Rational(1, 100), Rational(1, 7), Rational(1, 2)}) {
    auto inv = planted_error_inverter(f, delta);
    auto rep = verify_sd_chain(f, *inv, 2);
    EXPECT_LE(rep.t1, delta);
    EXPECT_GT(rep.t1, 0);
    EXPECT_EQ(rep.t4, rep.t3);  // i is uniform on [n − 1]
    EXPECT_TRUE(rep.data_processing);
    EXPECT_TRUE(rep.all_ok()) << delta;
    for (const auto& row : rep.rows) {
      EXPECT_LE(row.sd_s, 5 * delta);
      EXPECT_EQ(row.triangle_residual, row.sd_s - row.sd_q);  // Q = S
    }
  }
}

// Target Q differs from S: the triangle step holds row by row.
TEST(SdChainTest, TriangleAgainstDifferentTarget) {
  auto d = *make_corpus_dist(kCorpusBernoulli34, 4);
  FnFamily f(dyadic_sampler(d, 8));
  auto inv = planted_error_inverter(f, Rational(1, 64));
  auto q = BitStringDist::bernoulli_product(4, Rational(7, 10));
  auto rep = verify_sd_chain(f, *inv, 1, q);
  EXPECT_GT(rep.q_to_s, 0);
  EXPECT_TRUE(rep.triangle);
  for (const auto& row : rep.rows) EXPECT_GE(row.triangle_residual, 0);
}

}  // namespace
}  // namespace mclab
