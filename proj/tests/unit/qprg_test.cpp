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

#include "mclab/core/error.hpp"
#include "mclab/qprg/qprg.hpp"
#include "mclab/sampler/corpus.hpp"

namespace mclab {
namespace {

const KolmogorovOracle& oracle16() {
  static const KolmogorovOracle o = [] {
    UtmConfig cfg;
    cfg.max_program_len = 16;
    return build_oracle(cfg);
  }();
  return o;
}

BitStringDist uniform_over(unsigned n, const std::vector<BitString>& xs) {
  std::vector<BitStringDist::Entry> e;
  for (const auto& x : xs) e.emplace_back(x, make_rational(1, xs.size()));
  return BitStringDist::from_entries(n, e);
}

TEST(QprgSpecTest, ClaimVerified) {
  auto d = *make_corpus_dist(kCorpusPointZero, 4);
  EXPECT_EQ(QprgSpec::make("pt", d, Rational(15, 16)).claimed_sd, Rational(15, 16));
  EXPECT_THROW(QprgSpec::make("pt", d, Rational(31, 32)), Error);
  std::vector<BitStringDist> fam(4, d);
  EXPECT_NO_THROW(NuQprgSpec::make("fam", fam, 1));
  fam.pop_back();
  EXPECT_THROW(NuQprgSpec::make("fam", fam, 0), Error);
}

TEST(AmplifyTest, Shapes) {
  auto s = amplify_shape(16, Rational(3, 4));
  EXPECT_EQ(s.a, 2u);   // ceil(16^(1/8))
  EXPECT_EQ(s.b, 12u);  // ceil(16^(7/8)) = ceil(11.31)
  EXPECT_TRUE(s.truncated());
  auto t = amplify_shape(12, Rational(3, 4));
  EXPECT_EQ(t.a, 2u);
  EXPECT_EQ(t.b, 9u);
  EXPECT_THROW(amplify_shape(12, Rational(1)), Error);
}

TEST(AmplifyTest, TruncatedOutputIsBernoulliProduct) {
  auto base = QprgSpec::make("b34", *make_corpus_dist(kCorpusBernoulli34, 2));
  auto amp = amplify(base, 12, Rational(3, 4));
  EXPECT_EQ(amp.output, BitStringDist::bernoulli_product(12, Rational(3, 4)));
  EXPECT_EQ(amp.base_sd, Rational(5, 16));
  EXPECT_EQ(amp.product_sd, ProductDist(base.gen, 9).sd_to_uniform());
  EXPECT_THROW(amplify(base, 16 * 16, Rational(3, 4)), Error);
  auto base3 = QprgSpec::make("b3", *make_corpus_dist(kCorpusBernoulli34, 3));
  EXPECT_THROW(amplify(base3, 12, Rational(3, 4)), Error);
}

TEST(AmplifyTest, UntruncatedSdMatchesMaterialized) {
  for (const auto& e : corpus(3)) {
    auto amp = amplify_copies(QprgSpec::make(e.name, e.dist), 4);
    EXPECT_EQ(amp.output_sd, amp.product_sd) << e.name;
    EXPECT_EQ(amp.output.n(), 12u);
  }
}

// Bernoulli(3/4)^2 with 8 copies: SD = 0.70529 against 1 − e^-2.5 = 0.91792.
TEST(AmplifyTest, CounterexampleToExponentialBound) {
  auto amp = amplify_copies(QprgSpec::make("b34", *make_corpus_dist(kCorpusBernoulli34, 2)), 8);
  EXPECT_NEAR(amp.product_sd.get_d(), 0.70529, 5e-6);
  EXPECT_NEAR(amp.bound.midpoint(), 1 - std::exp(-2.5), 1e-12);
  EXPECT_EQ(amp.bound_holds, Certainty::kFalse);
  EXPECT_FALSE(amp.degenerate);
}

TEST(AmplifyTest, UniformBaseIsDegenerate) {
  auto amp = amplify_copies(QprgSpec::make("u", BitStringDist::uniform(2)), 5);
  EXPECT_TRUE(amp.degenerate);
  EXPECT_EQ(amp.product_sd, 0);
  EXPECT_EQ(amp.bound_holds, Certainty::kTrue);
}

TEST(MixtureTest, HalfAndHalf) {
  auto d = *make_corpus_dist(kCorpusPointZero, 4);
  auto m = mixture_instance(d);
  EXPECT_EQ(m.prob(BitString::zeros(4)), Rational(17, 32));
  EXPECT_EQ(m.prob(BitString::ones(4)), Rational(1, 32));
  std::vector<BitStringDist> fam;
  for (unsigned i = 0; i < 4; ++i) fam.push_back(BitStringDist::point_mass(BitString(1u << i, 4)));
  auto nu = nu_mixture_instance(NuQprgSpec::make("fam", fam, 0));
  EXPECT_EQ(nu.total_mass(), 1);
  EXPECT_EQ(nu.prob(BitString(1, 4)), Rational(1, 32) + Rational(1, 8));
}

TEST(ClaimHighTest, CrossCheckAndBound) {
  const auto& o = oracle16();
  for (unsigned n : {8u, 10u, 12u})
    for (unsigned delta : {3u, 4u, 6u}) {
      auto r = verify_claim_high(o, n, delta);
      EXPECT_TRUE(r.cross_check);
      EXPECT_TRUE(r.holds) << n << " " << delta;
      EXPECT_EQ(r.bound, pow2(1 - static_cast<long>(delta)));
    }
  // 12-bit strings at K_T = 14: the constant, alternating and block strings.
  EXPECT_EQ(count_low_complexity(o, 12, 14), 8u);
  EXPECT_EQ(count_low_complexity(o, 12, 15), 4096u);
  EXPECT_THROW(verify_claim_high(o, 24, 2), Error);
}

TEST(ClaimLowTest, PointMassHolds) {
  auto r = verify_claim_low(BitStringDist::point_mass(BitString::zeros(16)), pow2(-4), Rational(3, 4));
  EXPECT_EQ(r.status, ClaimStatus::kHolds);
  EXPECT_EQ(r.size_c, 1u);
  EXPECT_EQ(r.size_b, 0u);
  EXPECT_EQ(r.mass_c, 1);
  EXPECT_EQ(r.n_tau.midpoint(), 8.0);
}

TEST(ClaimLowTest, UniformIsPreconditionUnmet) {
  auto r = verify_claim_low(BitStringDist::uniform(10), Rational(1, 8), Rational(1, 2));
  EXPECT_EQ(r.status, ClaimStatus::kPreconditionUnmet);
  EXPECT_EQ(r.size_b + r.size_c, 1024u);
}

// Property: any generator meeting the SD hypothesis satisfies both
// conclusions; support sizes sweep across the hypothesis edge.
TEST(ClaimLowTest, SubsetGeneratorsSweep) {
  const unsigned n = 10;
  const Rational tau(1, 2);  // n^τ = 3.162, hypothesis SD >= 0.888
  for (unsigned size : {1u, 2u, 3u, 7u, 64u, 100u, 114u, 115u, 200u}) {
    std::vector<BitString> xs;
    for (unsigned i = 0; i < size; ++i) xs.emplace_back(i * 5, n);
    auto r = verify_claim_low(uniform_over(n, xs), Rational(1, 4), tau);
    const bool far = 1 - make_rational(size, 1024) >= 1 - std::pow(2.0, -std::sqrt(10.0)) + 1e-9;
    if (far) {
      EXPECT_EQ(r.status, ClaimStatus::kHolds) << size;
    } else {
      EXPECT_EQ(r.status, ClaimStatus::kPreconditionUnmet) << size;
    }
  }
}

TEST(DistinguisherTest, IdentityResidualIsZero) {
  const auto& o = oracle16();
  const auto params = GapKParams::decider(12, 15, 1);  // Yes: K_T <= 14
  const Decider always{"always_yes", [](const BitString&) { return Rational(1); }};
  for (const auto& e : corpus(12)) {
    for (const Decider& dec : {make_oracle_decider(params, o), make_coin_decider(),
                               make_threshold_decider(exact_estimator(e.dist), 15, 1), always}) {
      auto r = distinguisher_report(dec, e.dist, params, o);
      EXPECT_EQ(r.residual, 0) << e.name << " " << dec.name;
      EXPECT_LE(r.r_gen, r.pr_gen_not_yes);
      EXPECT_LE(r.r_u, r.pr_u_not_no);
    }
  }
}

TEST(DistinguisherTest, OracleAdvantageOnLowComplexityGenerator) {
  const auto& o = oracle16();
  const auto params = GapKParams::decider(12, 15, 1);
  std::vector<BitString> yes;
  for (std::uint64_t v = 0; v < 4096; ++v)
    if (label_instance(BitString(v, 12), params, o).label == GapKLabel::kYes) yes.emplace_back(v, 12);
  ASSERT_EQ(yes.size(), 8u);
  auto r = oracle_label_advantage(uniform_over(12, yes), params, o, Rational(3, 4));
  EXPECT_EQ(r.status, ClaimStatus::kHolds);
  EXPECT_EQ(r.distinguisher.advantage, 1 - make_rational(8, 4096));
  EXPECT_EQ(r.uniform_low_mass, make_rational(8, 4096));
  auto far_fail = oracle_label_advantage(BitStringDist::bernoulli_product(12, Rational(3, 4)), params, o,
                                         Rational(3, 4));
  EXPECT_EQ(far_fail.status, ClaimStatus::kPreconditionUnmet);
}

}  // namespace
}  // namespace mclab
