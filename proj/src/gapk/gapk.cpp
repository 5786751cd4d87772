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

#include "mclab/gapk/gapk.hpp"

#include <nlohmann/json.hpp>

#include "mclab/core/error.hpp"
#include "mclab/dist/registry.hpp"
#include "mclab/utm/index.hpp"

namespace mclab {

unsigned GapKParams::default_delta(unsigned n) {
  if (n < 2) fail(ErrorCode::kConfigInvalid, "default gap needs n >= 2");
  if ((n & (n - 1)) == 0) {
    const unsigned k = static_cast<unsigned>(__builtin_ctz(n));
    return k * k;
  }
  // (log2 n)^2 is irrational here, so the enclosure never straddles an integer.
  const Interval l = Interval::from_int(n).log() / Interval::from_int(2).log();
  const Interval sq = l * l;
  const unsigned lo = static_cast<unsigned>(sq.lower());
  for (unsigned c = lo; c < lo + 3; ++c)
    if (certainly_ge(Rational(c), sq) == Certainty::kTrue) return c;
  fail(ErrorCode::kConfigInvalid, "cannot resolve ceil((log2 n)^2)");
}

GapKParams GapKParams::preset(unsigned n, const Rational& epsilon, std::optional<unsigned> delta) {
  if (epsilon <= 0 || epsilon >= 1) fail(ErrorCode::kConfigInvalid, "epsilon must lie in (0, 1)");
  GapKParams p;
  p.n = n;
  p.epsilon = epsilon;
  p.delta = delta ? *delta : default_delta(n);
  const std::uint64_t root = ceil_root_pow(n, epsilon.get_num().get_ui(), epsilon.get_den().get_ui());
  if (root > n || p.delta > n) fail(ErrorCode::kConfigInvalid, "preset thresholds fall below zero");
  p.s1 = n - static_cast<unsigned>(root);
  p.s2 = n - p.delta;
  p.validate();
  return p;
}

GapKParams GapKParams::decider(unsigned n, unsigned s, unsigned delta) {
  if (delta > s) fail(ErrorCode::kConfigInvalid, "gap exceeds threshold");
  GapKParams p;
  p.n = n;
  p.s1 = s - delta;
  p.s2 = s;
  p.delta = delta;
  p.validate();
  return p;
}

void GapKParams::validate() const {
  if (delta < 1) fail(ErrorCode::kConfigInvalid, "gap must be >= 1");
  if (s2 <= s1) fail(ErrorCode::kConfigInvalid, "GapK needs s1 < s2");
  if (s2 - s1 < delta) fail(ErrorCode::kConfigInvalid, "s2 − s1 is below the gap");
}

std::string_view to_string(GapKLabel label) {
  switch (label) {
    case GapKLabel::kYes: return "yes";
    case GapKLabel::kNo: return "no";
    case GapKLabel::kPromiseViolating: return "promise";
  }
  return "?";
}

std::string GapKInstance::to_json_line() const {
  nlohmann::ordered_json j;
  j["x"] = x.hex();
  j["k"] = k ? nlohmann::ordered_json(*k) : nlohmann::ordered_json(nullptr);
  j["label"] = std::string(to_string(label));
  j["s1"] = s1;
  j["s2"] = s2;
  return j.dump();
}

GapKInstance label_instance(const BitString& x, const GapKParams& params, const KolmogorovOracle& oracle) {
  if (x.size() > oracle.config().max_output_len)
    fail(ErrorCode::kOracleMiss, "length " + std::to_string(x.size()) + " above the oracle's output limit");
  GapKInstance inst;
  inst.x = x;
  inst.s1 = params.s1;
  inst.s2 = params.s2;
  inst.k = oracle.lookup(x);
  if (inst.k) {
    inst.label = *inst.k <= params.s1 ? GapKLabel::kYes
                 : *inst.k >= params.s2 ? GapKLabel::kNo
                                        : GapKLabel::kPromiseViolating;
    return inst;
  }
  // K_T(x) >= L_max + 1.
  const unsigned floor_k = oracle.max_program_len() + 1;
  if (params.s2 > floor_k) fail(ErrorCode::kOracleMiss, "K_T(" + x.hex() + ") > L_max cannot be compared with s2");
  inst.label = GapKLabel::kNo;
  return inst;
}

std::vector<GapKInstance> label_all(const GapKParams& params, const KolmogorovOracle& oracle) {
  if (params.n > 24) fail(ErrorCode::kBudgetExceeded, "labelling every string above n = 24");
  std::vector<GapKInstance> out;
  out.reserve(std::size_t{1} << params.n);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << params.n); ++v)
    out.push_back(label_instance(BitString(v, params.n), params, oracle));
  return out;
}

bool threshold_decider(const BitString& x, const Estimator& estimate, unsigned s, unsigned delta) {
  const Rational e = estimate(x);
  if (e < 0) fail(ErrorCode::kConfigInvalid, "estimator returned a negative value");
  return compare_pow2(e, static_cast<long>(delta) - 2 * static_cast<long>(s), 2) >= 0;
}

Decider make_threshold_decider(Estimator estimate, unsigned s, unsigned delta) {
  return {"threshold", [estimate = std::move(estimate), s, delta](const BitString& x) {
            return Rational(threshold_decider(x, estimate, s, delta) ? 1 : 0);
          }};
}

Decider make_oracle_decider(const GapKParams& params, const KolmogorovOracle& oracle) {
  return {"oracle_label", [params, &oracle](const BitString& x) {
            return Rational(label_instance(x, params, oracle).label == GapKLabel::kYes ? 1 : 0);
          }};
}

Decider make_coin_decider() {
  return {"coin", [](const BitString&) { return Rational(1, 2); }};
}

Estimator exact_estimator(const BitStringDist& d) {
  return [&d](const BitString& x) { return d.prob(x); };
}

namespace {

DeciderErrorReport account(const Decider& decider, const BitStringDist& q, const GapKParams& params,
                           const KolmogorovOracle& oracle) {
  if (!q.exact()) fail(ErrorCode::kConfigInvalid, "error accounting needs an exact distribution");
  if (q.n() != params.n) fail(ErrorCode::kLengthMismatch, "distribution length differs from params.n");
  params.validate();
  DeciderErrorReport r;
  q.for_each_support([&](const BitString& x, const Rational& p) {
    const GapKInstance inst = label_instance(x, params, oracle);
    switch (inst.label) {
      case GapKLabel::kYes: r.yes_error_mass += p * (1 - decider.accept(x)); break;
      case GapKLabel::kNo: r.no_error_mass += p * decider.accept(x); break;
      case GapKLabel::kPromiseViolating: r.promise_mass += p; break;
    }
  });
  r.total = r.yes_error_mass + r.no_error_mass;
  return r;
}

Interval two_to_minus(unsigned delta, unsigned denom) {
  return (-(Interval::from_int(delta) / Interval::from_int(denom))).exp2();
}

}  // namespace

DeciderErrorReport exact_error_account(const Decider& decider, const BitStringDist& q, const GapKParams& params,
                                       const KolmogorovOracle& oracle) {
  DeciderErrorReport r = account(decider, q, params, oracle);
  r.bound_name = "yes_error_mass <= 2^(-delta/3)";
  r.bound = two_to_minus(params.delta, 3);
  r.bound_checked = certainly_le(r.yes_error_mass, r.bound) == Certainty::kTrue;
  return r;
}

DeciderErrorReport strong_error_account(const Decider& decider, const BitStringDist& q, const GapKParams& params,
                                        const KolmogorovOracle& oracle, unsigned k) {
  DeciderErrorReport r = account(decider, q, params, oracle);
  const Rational schema = Rational(1, 2) - Rational(1) / pow(Rational(params.n), k);
  r.bound_name = "total >= 1/2 - 1/n^" + std::to_string(k);
  r.bound = Interval(schema);
  r.bound_checked = r.total >= schema;
  return r;
}

BandReport decider_band_check(const Estimator& estimate, const BitStringDist& q, const GapKParams& params,
                              const KolmogorovOracle& oracle) {
  if (!q.exact()) fail(ErrorCode::kConfigInvalid, "band check needs an exact distribution");
  params.validate();
  const unsigned s = params.s2, delta = params.delta;
  const long e2 = static_cast<long>(delta) - 2 * static_cast<long>(s);
  BandReport r;
  r.threshold_sq = pow2(e2);
  q.for_each_support([&](const BitString& x, const Rational& p) {
    const GapKInstance inst = label_instance(x, params, oracle);
    if (inst.label == GapKLabel::kPromiseViolating) return;
    const bool yes = threshold_decider(x, estimate, s, delta);
    const bool err = (inst.label == GapKLabel::kYes) != yes;
    if (!err) return;
    ++r.errors;
    if (inst.label == GapKLabel::kYes) r.yes_error_mass += p;
    const bool above_low_edge = index_threshold_met(p, s, delta);                      // p >= (99/100)·thr
    const bool below_high_edge = compare_pow2(p * Rational(99, 100), e2, 2) < 0;      // p < (100/99)·thr
    if (above_low_edge && below_high_edge) {
      r.band_mass += p;
    } else if (inst.label == GapKLabel::kYes && below_high_edge) {
      r.low_mass += p;
    } else if (inst.label == GapKLabel::kNo && above_low_edge) {
      r.high_mass += p;
    } else {
      r.outside.push_back(x);
    }
  });
  r.yes_bound = two_to_minus(delta, 3);
  r.yes_bound_checked = certainly_le(r.yes_error_mass, r.yes_bound) == Certainty::kTrue;
  return r;
}

HighEncodingReport verify_high_encodings(const DistributionRegistry& registry, std::uint64_t code, unsigned n,
                                         unsigned s, unsigned delta, std::uint64_t step_cap) {
  const BitStringDist* d = registry.find(code, n);
  const auto* high = registry.high(code, n, s, delta);
  if (d == nullptr || high == nullptr) fail(ErrorCode::kConfigInvalid, "unknown distribution code");
  HighEncodingReport r;
  r.high_size = high->size();
  r.size_bound_ok = high_size_within_bound(high->size(), s, delta);
  r.overhead_bits = index_header_bits(code, n, s, delta);
  r.index_bits = index_width(high->size());
  r.description_bits = r.overhead_bits + r.index_bits;
  r.effective_threshold = r.description_bits + 1;
  UtmConfig cfg;
  cfg.step_cap = step_cap;
  cfg.max_program_len = BitString::kMaxLen;
  cfg.max_output_len = BitString::kMaxLen;
  cfg.registry = &registry;
  r.all_reproduced = true;
  for (std::uint64_t i = 1; i <= high->size(); ++i) {
    const IndexDescription desc = index_description(registry, code, n, s, delta, i);
    const RunResult run = run_program(desc.program, cfg);
    r.max_steps = std::max(r.max_steps, run.steps);
    if (!run.halted() || run.output != (*high)[i - 1]) {
      r.all_reproduced = false;
      r.no_error_mass += d->prob((*high)[i - 1]);
    }
  }
  return r;
}

}  // namespace mclab
