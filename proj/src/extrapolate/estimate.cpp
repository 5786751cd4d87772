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

#include "mclab/extrapolate/estimate.hpp"

#include "mclab/core/error.hpp"

namespace mclab {

namespace {

Rational nat_pow(unsigned n, unsigned e) { return pow(Rational(n), e); }

RandomStream index_stream(std::uint64_t seed, const BitString& y, unsigned i) {
  return RandomStream(seed).substream({y.value(), y.size(), i});
}

}  // namespace

EstimateConfig EstimateConfig::defaults(unsigned n, unsigned q, std::uint64_t reps) {
  EstimateConfig c;
  c.reps = reps;
  c.q = q;
  c.a = nat_pow(n, q + 2);
  c.b = nat_pow(n, q + 4);
  c.d = nat_pow(n, q + 4);
  return c;
}

void EstimateConfig::validate() const {
  if (reps == 0) fail(ErrorCode::kConfigInvalid, "estimate reps must be positive");
  if (c <= 1) fail(ErrorCode::kConfigInvalid, "estimate accuracy factor c must exceed 1");
  if (a <= 0 || b <= 0 || d <= 0) fail(ErrorCode::kConfigInvalid, "estimate parameters a, b, d must be positive");
}

std::string EstimateResult::audit_jsonl() const {
  std::string out;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    out += "{\"y\":\"" + y.hex() + "\",\"i\":" + std::to_string(i) + ",\"count\":" + std::to_string(indices[i].count) +
           ",\"reps\":" + std::to_string(reps) + ",\"p_tilde\":\"" + to_fraction_string(indices[i].p_tilde) + "\"}\n";
  }
  return out;
}

EstimateResult estimate(const BitString& y, const Extrapolator& ext, const EstimateConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  if (y.size() != ext.n()) fail(ErrorCode::kLengthMismatch, "estimate input length differs from extrapolator");
  EstimateResult r;
  r.y = y;
  r.reps = cfg.reps;
  r.product = 1;
  const Rational reps(BigInt(std::to_string(cfg.reps)));
  for (unsigned i = 0; i < y.size(); ++i) {
    const BitString pre = y.prefix(i);
    if (ext.zero_mass_prefix(pre)) r.off_support = true;
    RandomStream rng = index_stream(seed, y, i);
    const std::uint64_t ones = ext.count_ones(i, pre, cfg.reps, rng);
    EstimateIndex e;
    e.count = y[i] ? ones : cfg.reps - ones;
    e.p_tilde = Rational(BigInt(std::to_string(e.count))) / reps;
    e.p_tilde.canonicalize();
    r.product *= e.p_tilde;
    r.indices.push_back(std::move(e));
  }
  return r;
}

Rational estimate_exact_substitution(const BitString& y, const Extrapolator& ext) {
  if (y.size() != ext.n()) fail(ErrorCode::kLengthMismatch, "input length differs from extrapolator");
  Rational prod(1);
  for (unsigned i = 0; i < y.size(); ++i) {
    auto c = ext.conditional_one(i, y.prefix(i));
    if (!c) fail(ErrorCode::kNotTabular, "exact substitution needs a tabular extrapolator");
    prod *= y[i] ? *c : Rational(1 - *c);
  }
  return prod;
}

Interval hoeffding_failure_bound(const EstimateConfig& cfg, unsigned n) {
  const Interval reps(Rational(BigInt(std::to_string(cfg.reps))));
  const Interval d(cfg.d);
  return Interval::from_int(2L * n) * (-(Interval::from_int(2) * reps / (d * d))).exp();
}

Rational estimate_failure_schema(unsigned n, unsigned q) { return Rational(6) / nat_pow(n, q + 1); }

AccuracyReport estimate_accuracy(const BitStringDist& d, const Extrapolator& ext, const EstimateConfig& cfg,
                                 std::uint64_t seed) {
  AccuracyReport rep;
  d.for_each_support([&](const BitString& y, const Rational& p) {
    EstimateResult r = estimate(y, ext, cfg, seed);
    ++rep.strings;
    if (r.off_support) rep.off_support_mass += p;
    if (p <= cfg.c * r.product && r.product <= cfg.c * p) {
      ++rep.passing;
      rep.pass_mass += p;
    }
  });
  return rep;
}

HoeffdingTrialReport hoeffding_trials(const BitStringDist& d, const Extrapolator& ext, const EstimateConfig& cfg,
                                      std::uint64_t trials, std::uint64_t seed) {
  if (!ext.tabular()) fail(ErrorCode::kNotTabular, "Hoeffding trials need a tabular extrapolator");
  ChainFactorization chain(d);
  const Rational tol = Rational(1) / cfg.d;
  HoeffdingTrialReport rep;
  RandomStream root(seed, 0x686F65ull);
  for (std::uint64_t t = 0; t < trials; ++t) {
    RandomStream rng = root.substream(t);
    RandomStream ties = rng.substream(1);
    BitString y;
    for (unsigned i = 0; i < d.n(); ++i) y = y.append(ExactBernoulli(chain.conditional_one(i, y)).draw(rng, ties));
    EstimateResult r = estimate(y, ext, cfg, derive_stream(seed, t));
    bool failed = false;
    for (unsigned i = 0; i < d.n() && !failed; ++i) {
      const Rational c1 = *ext.conditional_one(i, y.prefix(i));
      const Rational truth = y[i] ? c1 : Rational(1 - c1);
      const Rational dev = r.indices[i].p_tilde - truth;
      failed = dev > tol || -dev > tol;
    }
    ++rep.trials;
    rep.failures += failed ? 1 : 0;
  }
  return rep;
}

}  // namespace mclab
