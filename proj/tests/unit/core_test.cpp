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

#include <cmath>
#include <map>
#include <vector>

#include "mclab/core/bitstring.hpp"
#include "mclab/core/error.hpp"
#include "mclab/core/interval.hpp"
#include "mclab/core/random.hpp"
#include "mclab/core/rational.hpp"

namespace mclab {
namespace {

TEST(BitStringTest, ParseAndIndex) {
  auto s = BitString::parse("0110");
  EXPECT_EQ(s.size(), 4u);
  EXPECT_EQ(s.value(), 6u);
  EXPECT_FALSE(s[0]);
  EXPECT_TRUE(s[1]);
  EXPECT_TRUE(s[2]);
  EXPECT_FALSE(s[3]);
  EXPECT_EQ(s.str(), "0110");
}

TEST(BitStringTest, EmptyString) {
  BitString e;
  EXPECT_TRUE(e.empty());
  EXPECT_EQ(e.str(), "");
  EXPECT_EQ(BitString::parse(""), e);
}

TEST(BitStringTest, PrefixSuffixConcat) {
  auto s = BitString::parse("1011001");
  EXPECT_EQ(s.prefix(3).str(), "101");
  EXPECT_EQ(s.suffix_from(3).str(), "1001");
  EXPECT_EQ(s.prefix(3).concat(s.suffix_from(3)), s);
  EXPECT_EQ(s.append(true).str(), "10110011");
  EXPECT_EQ(s.complement().str(), "0100110");
  EXPECT_EQ(s.reversed().str(), "1001101");
  EXPECT_EQ(s.popcount(), 4u);
}

TEST(BitStringTest, ShortlexOrder) {
  EXPECT_LT(BitString::parse("11"), BitString::parse("000"));
  EXPECT_LT(BitString::parse("001"), BitString::parse("010"));
  EXPECT_LT(BitString(), BitString::parse("0"));
}

TEST(BitStringTest, HexRoundTrip) {
  for (const char* bits : {"", "1", "0101", "10110", "111111111", "0000000000000001"}) {
    auto s = BitString::parse(bits);
    EXPECT_EQ(BitString::parse_hex(s.hex()), s) << bits;
  }
  EXPECT_EQ(BitString::parse("10110").hex(), "5:b0");
  EXPECT_EQ(BitString::parse("").hex(), "0:");
}

TEST(BitStringTest, Full64Bits) {
  auto s = BitString::ones(64);
  EXPECT_EQ(s.value(), ~std::uint64_t{0});
  EXPECT_EQ(s.complement(), BitString::zeros(64));
  EXPECT_THROW(s.append(false), Error);
}

TEST(BitStringTest, RejectsBadInput) {
  EXPECT_THROW(BitString::parse("01a"), Error);
  EXPECT_THROW(BitString(0, 65), Error);
  EXPECT_EQ(BitString(0b1101, 2).str(), "01");
}

TEST(RationalTest, Parse) {
  EXPECT_EQ(parse_rational("3/4"), Rational(3, 4));
  EXPECT_EQ(parse_rational("6/8"), Rational(3, 4));
  EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_rational("-2"), Rational(-2));
  EXPECT_EQ(parse_rational("010"), Rational(10));
  EXPECT_EQ(parse_rational("0.025"), Rational(1, 40));
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("x"), Error);
  EXPECT_EQ(to_fraction_string(Rational(6, 8)), "3/4");
  EXPECT_EQ(to_fraction_string(Rational(2)), "2");
}

TEST(RationalTest, Pow2AndCompare) {
  EXPECT_EQ(pow2(-3), Rational(1, 8));
  EXPECT_EQ(pow2(5), Rational(32));
  // 2^(1/2) ~ 1.41421356
  EXPECT_LT(compare_pow2(Rational(141421, 100000), 1, 2), 0);
  EXPECT_GT(compare_pow2(Rational(141422, 100000), 1, 2), 0);
  EXPECT_EQ(compare_pow2(Rational(1, 4), -2, 1), 0);
  EXPECT_EQ(compare_pow2(Rational(0), -100, 1), -1);
}

TEST(RationalTest, CeilRootPow) {
  // ceil(16^(1/8)) = ceil(1.414..) = 2 ; ceil(16^(7/8)) = ceil(11.31..) = 12.
  EXPECT_EQ(ceil_root_pow(16, 1, 8), 2u);
  EXPECT_EQ(ceil_root_pow(16, 7, 8), 12u);
  EXPECT_EQ(ceil_root_pow(16, 1, 2), 4u);
  EXPECT_EQ(ceil_root_pow(10, 1, 2), 4u);
  EXPECT_EQ(ceil_root_pow(9, 1, 2), 3u);
  for (std::uint64_t n = 1; n < 200; ++n) {
    auto m = ceil_root_pow(n, 3, 4);
    EXPECT_GE(std::pow(static_cast<double>(m), 4) + 1e-9, std::pow(static_cast<double>(n), 3));
    if (m > 0) {
      EXPECT_LT(std::pow(static_cast<double>(m - 1), 4), std::pow(static_cast<double>(n), 3));
    }
  }
}

TEST(IntervalTest, ExpEnclosesTrueValue) {
  Interval e = Interval::from_int(-20).exp();
  EXPECT_LE(e.lower(), std::exp(-20.0));
  EXPECT_GE(e.upper(), std::exp(-20.0));
  EXPECT_LT(e.upper() - e.lower(), 1e-23);  // two binary64 ulps after outward conversion
}

TEST(IntervalTest, CertaintyComparisons) {
  Interval half(Rational(1, 2));
  EXPECT_EQ(certainly_le(Rational(1, 3), half), Certainty::kTrue);
  EXPECT_EQ(certainly_le(Rational(2, 3), half), Certainty::kFalse);
  EXPECT_EQ(certainly_ge(Rational(2, 3), half), Certainty::kTrue);
  EXPECT_EQ(certainly_ge(Rational(1, 3), half), Certainty::kFalse);
  Interval sqrt2 = Interval::from_int(2).pow(Interval(Rational(1, 2)));
  EXPECT_EQ(certainly_le(Rational(141421, 100000), sqrt2), Certainty::kTrue);
  EXPECT_EQ(certainly_ge(Rational(141422, 100000), sqrt2), Certainty::kTrue);
}

TEST(IntervalTest, ArithmeticIsOutward) {
  Interval third = Interval(Rational(1)) / Interval::from_int(3);
  Interval one = third * Interval::from_int(3);
  EXPECT_LE(one.lower(), 1.0);
  EXPECT_GE(one.upper(), 1.0);
  Interval neg = -third;
  EXPECT_LE(neg.upper(), -0.3333);
}

// Known-answer vectors for Philox4x32-10 from the Random123 distribution.
TEST(PhiloxTest, KnownAnswers) {
  using kernels::philox4x32_10;
  auto z = philox4x32_10({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(z, (std::array<std::uint32_t, 4>{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
  auto f = philox4x32_10({~0u, ~0u, ~0u, ~0u}, {~0u, ~0u});
  EXPECT_EQ(f, (std::array<std::uint32_t, 4>{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
  auto p = philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
  EXPECT_EQ(p, (std::array<std::uint32_t, 4>{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(RandomStreamTest, NextMatchesFill) {
  RandomStream a(42, 7), b(42, 7);
  std::vector<std::uint64_t> singles(37);
  for (auto& w : singles) w = a.next();
  std::vector<std::uint64_t> bulk(37);
  b.next();  // misalign, then fill the rest
  bulk[0] = singles[0];
  b.fill(std::span(bulk).subspan(1));
  EXPECT_EQ(singles, bulk);
  EXPECT_EQ(a.position(), b.position());
}

TEST(RandomStreamTest, StreamsDiffer) {
  RandomStream a(1, 0), b(1, 1), c(2, 0);
  auto x = a.next();
  EXPECT_NE(x, b.next());
  EXPECT_NE(x, c.next());
  EXPECT_NE(a.substream(5).next(), a.substream(6).next());
}

TEST(RandomStreamTest, UniformBelowRange) {
  RandomStream r(9);
  std::vector<int> hist(6, 0);
  for (int i = 0; i < 60000; ++i) ++hist[r.uniform_below(6)];
  for (int h : hist) EXPECT_NEAR(h, 10000, 500);
  EXPECT_THROW(r.uniform_below(0), Error);
}

TEST(ExactBernoulliTest, DegenerateDrawsNothing) {
  RandomStream m(3), t(4);
  EXPECT_EQ(ExactBernoulli(Rational(1)).count(1000, m, t), 1000u);
  EXPECT_EQ(ExactBernoulli(Rational(0)).count(1000, m, t), 0u);
  EXPECT_EQ(m.position(), 0u);
  EXPECT_THROW(ExactBernoulli(Rational(3, 2)), Error);
}

TEST(ExactBernoulliTest, CountEqualsSumOfDraws) {
  ExactBernoulli b(Rational(1, 3));
  RandomStream m1(11, 2), t1(11, 3), m2(11, 2), t2(11, 3);
  std::uint64_t drawn = 0;
  for (int i = 0; i < 10007; ++i) drawn += b.draw(m1, t1);
  EXPECT_EQ(b.count(10007, m2, t2), drawn);
}

TEST(ExactBernoulliTest, DyadicThresholdIsExact) {
  ExactBernoulli b(Rational(1, 4));
  EXPECT_EQ(b.threshold(), std::uint64_t{1} << 62);
  RandomStream ties(0);
  EXPECT_FALSE(b.resolve_tie(ties));  // zero remainder: u == T means u/2^64 == p exactly
}

TEST(ExactBernoulliTest, FrequencyWithinHoeffding) {
  ExactBernoulli b(Rational(7, 10));
  RandomStream m(5), t(6);
  const std::uint64_t n = 200000;
  double freq = static_cast<double>(b.count(n, m, t)) / n;
  EXPECT_NEAR(freq, 0.7, 0.01);  // Hoeffding at this n: P(|dev|>0.01) < 2e-17
}

class KernelEquivalenceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    if (!kernels::isa_supported(kernels::Isa::kAvx2)) GTEST_SKIP() << "AVX2 unavailable";
  }
  const kernels::KernelTable& s = kernels::scalar_table();
  const kernels::KernelTable& v = kernels::avx2_table();
};

TEST_F(KernelEquivalenceTest, PhiloxFill) {
  for (std::size_t len : {0u, 1u, 2u, 7u, 8u, 9u, 64u, 1001u}) {
    std::vector<std::uint64_t> a(len), b(len);
    s.philox_fill({0x1234u, 0x5678u}, 99, (1ull << 32) - 3, a);
    v.philox_fill({0x1234u, 0x5678u}, 99, (1ull << 32) - 3, b);
    EXPECT_EQ(a, b) << len;
  }
}

TEST_F(KernelEquivalenceTest, CountBelow) {
  RandomStream r(77);
  std::vector<std::uint64_t> w(1031);
  r.fill(w);
  for (int k = 0; k < 40; ++k) w[k * 7] = w[3];  // plant ties
  for (std::uint64_t thr : {std::uint64_t{0}, w[3], ~std::uint64_t{0}, std::uint64_t{1} << 63, w[10]}) {
    EXPECT_EQ(s.count_below(w, thr), v.count_below(w, thr));
  }
}

TEST_F(KernelEquivalenceTest, Reductions) {
  RandomStream r(8);
  for (std::size_t len : {0u, 3u, 4u, 5u, 1023u}) {
    std::vector<double> a(len), b(len);
    for (auto& x : a) x = r.uniform01() * 1e3 - 5e2;
    for (auto& x : b) x = r.uniform01();
    EXPECT_EQ(s.sum(a), v.sum(a));
    EXPECT_EQ(s.abs_diff_sum(a, b), v.abs_diff_sum(a, b));
  }
}

TEST_F(KernelEquivalenceTest, GateAndBorn) {
  RandomStream r(12);
  const std::size_t dim = 1 << 6;
  std::vector<kernels::Complex> a(dim);
  for (auto& x : a) x = {r.uniform01() - 0.5, r.uniform01() - 0.5};
  auto b = a;
  const double h = 1 / std::sqrt(2.0);
  kernels::Mat2 u{kernels::Complex{h, 0.1}, {h, -0.2}, {h, 0.3}, {-h, 0.05}};
  for (unsigned t = 0; t < 6; ++t) {
    s.apply_1q(a, t, u);
    v.apply_1q(b, t, u);
  }
  for (std::size_t i = 0; i < dim; ++i) {
    EXPECT_EQ(a[i].real(), b[i].real());
    EXPECT_EQ(a[i].imag(), b[i].imag());
  }
  std::vector<double> pa(dim), pb(dim);
  s.norm_sq(a, pa);
  v.norm_sq(a, pb);
  EXPECT_EQ(pa, pb);
}

TEST(DispatchTest, ForceScalar) {
  auto before = kernels::active_isa();
  kernels::force_isa(kernels::Isa::kScalar);
  EXPECT_EQ(kernels::active_isa(), kernels::Isa::kScalar);
  RandomStream r(1);
  auto x = r.next();
  if (kernels::isa_supported(before)) kernels::force_isa(before);
  RandomStream r2(1);
  EXPECT_EQ(r2.next(), x);
}

}  // namespace
}  // namespace mclab
