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

#include "mclab/qprg/qprg.hpp"

#include <map>

#include "mclab/core/error.hpp"

namespace mclab {

namespace {

constexpr unsigned kEnumerationCap = 24;

Rational sd_to_uniform(const BitStringDist& d) {
  return statistical_distance(d, BitStringDist::uniform(d.n()));
}

void require_exact(const BitStringDist& d, const char* what) {
  if (!d.exact()) fail(ErrorCode::kConfigInvalid, std::string(what) + " needs an exact distribution");
}

// n^τ, exact when it is an integer.
struct Power {
  Interval enclosure;
  std::optional<std::uint64_t> integer;
};

Power n_pow(unsigned n, const Rational& tau) {
  if (tau < 0) fail(ErrorCode::kConfigInvalid, "exponent must be non-negative");
  const unsigned long p = tau.get_num().get_ui(), q = tau.get_den().get_ui();
  const std::uint64_t m = ceil_root_pow(n, p, q);
  Power r;
  if (pow(Rational(static_cast<long>(m)), q) == pow(Rational(n), p)) {
    r.integer = m;
    r.enclosure = Interval(Rational(static_cast<long>(m)));
  } else {
    r.enclosure = Interval::from_int(n).pow(Interval(tau));
  }
  return r;
}

// 2^(e), exact when e is an integer.
Interval exp2_of(const Power& e, long shift, bool negate) {
  if (e.integer) {
    const long v = static_cast<long>(*e.integer);
    return Interval(pow2((negate ? -v : v) + shift));
  }
  const Interval x = negate ? -e.enclosure : e.enclosure;
  return (x + Interval::from_int(shift)).exp2();
}

BitStringDist concat_product(const std::vector<BitStringDist::Entry>& head, const BitStringDist& tail) {
  std::vector<BitStringDist::Entry> out;
  out.reserve(head.size() * tail.support_size());
  const auto tail_support = tail.support();
  for (const auto& [x, p] : head)
    for (const auto& [y, q] : tail_support) out.emplace_back(x.concat(y), p * q);
  const unsigned n = head.empty() ? tail.n() : head.front().first.size() + tail.n();
  return BitStringDist::from_entries(n, out);
}

BitStringDist prefix_marginal(const BitStringDist& d, unsigned len) {
  std::map<std::uint64_t, Rational> acc;
  d.for_each_support([&](const BitString& x, const Rational& p) { acc[x.prefix(len).value()] += p; });
  std::vector<BitStringDist::Entry> entries;
  for (const auto& [v, p] : acc) entries.emplace_back(BitString(v, len), p);
  return BitStringDist::from_entries(len, entries);
}

AmplifiedQprg finish(const QprgSpec& base, AmplifyShape shape, bool materialize) {
  AmplifiedQprg r;
  r.base = base;
  r.shape = shape;
  r.base_sd = sd_to_uniform(base.gen);
  r.product_sd = ProductDist(base.gen, shape.b).sd_to_uniform();
  const Interval exponent = -(Interval::from_int(shape.b) * Interval(r.base_sd));
  r.bound = Interval::from_int(1) - exponent.exp();
  r.bound_holds = certainly_ge(r.product_sd, r.bound);
  r.degenerate = r.base_sd == 0;
  if (!materialize) {
    r.output_sd = r.product_sd;
    return r;
  }

  const unsigned full = shape.target_n / shape.a, rem = shape.target_n % shape.a;
  std::vector<BitStringDist::Entry> acc{{BitString(), Rational(1)}};
  BitStringDist out;
  for (unsigned c = 0; c < full; ++c) {
    out = concat_product(acc, base.gen);
    acc = out.support();
  }
  if (rem > 0) out = concat_product(acc, prefix_marginal(base.gen, rem));
  r.output = out;
  r.output_sd = sd_to_uniform(r.output);
  return r;
}

}  // namespace

QprgSpec QprgSpec::make(std::string name, BitStringDist gen, Rational claimed_sd) {
  require_exact(gen, "QPRG generator");
  const Rational sd = sd_to_uniform(gen);
  if (sd < claimed_sd)
    fail(ErrorCode::kConfigInvalid, name + ": SD " + to_fraction_string(sd) + " below claimed " +
                                        to_fraction_string(claimed_sd));
  return {std::move(name), std::move(gen), std::move(claimed_sd)};
}

NuQprgSpec NuQprgSpec::make(std::string name, std::vector<BitStringDist> gens, unsigned mu_star,
                            Rational claimed_sd) {
  if (gens.empty()) fail(ErrorCode::kLengthMismatch, "advice family is empty");
  const unsigned n = gens.front().n();
  if (gens.size() != n) fail(ErrorCode::kLengthMismatch, "advice family needs exactly n members");
  for (const auto& g : gens) {
    if (g.n() != n) fail(ErrorCode::kLengthMismatch, "advice members differ in length");
    require_exact(g, "advice member");
  }
  if (mu_star >= n) fail(ErrorCode::kIndexOutOfRange, "good advice outside [0, n)");
  const Rational sd = sd_to_uniform(gens[mu_star]);
  if (sd < claimed_sd) fail(ErrorCode::kConfigInvalid, name + ": good advice SD below claim");
  return {std::move(name), std::move(gens), mu_star, std::move(claimed_sd)};
}

AmplifyShape amplify_shape(unsigned n, const Rational& tau) {
  if (tau <= 0 || tau >= 1) fail(ErrorCode::kConfigInvalid, "tau must lie in (0, 1)");
  const Rational lo = (1 - tau) / 2, hi = (1 + tau) / 2;
  AmplifyShape s;
  s.target_n = n;
  s.tau = tau;
  s.a = static_cast<unsigned>(ceil_root_pow(n, lo.get_num().get_ui(), lo.get_den().get_ui()));
  s.b = static_cast<unsigned>(ceil_root_pow(n, hi.get_num().get_ui(), hi.get_den().get_ui()));
  return s;
}

AmplifiedQprg amplify(const QprgSpec& base, unsigned n, const Rational& tau) {
  const AmplifyShape shape = amplify_shape(n, tau);
  if (base.n() != shape.a)
    fail(ErrorCode::kLengthMismatch, "base length " + std::to_string(base.n()) + " != A = " + std::to_string(shape.a));
  if (n > kEnumerationCap) fail(ErrorCode::kBudgetExceeded, "amplified output above 24 bits");
  return finish(base, shape, true);
}

AmplifiedQprg amplify_copies(const QprgSpec& base, unsigned copies) {
  if (copies == 0) fail(ErrorCode::kConfigInvalid, "need at least one copy");
  AmplifyShape shape;
  shape.a = base.n();
  shape.b = copies;
  shape.target_n = base.n() * copies;
  if (shape.target_n > kEnumerationCap) fail(ErrorCode::kBudgetExceeded, "amplified output above 24 bits");
  return finish(base, shape, shape.target_n <= BitStringDist::kDenseCap);
}

BitStringDist mixture_instance(const BitStringDist& gen) {
  return mixture(gen, BitStringDist::uniform(gen.n()), Rational(1, 2));
}

BitStringDist nu_mixture_instance(const NuQprgSpec& spec) {
  const unsigned n = spec.n();
  const Rational w(1, n);
  std::map<std::uint64_t, Rational> acc;
  for (const auto& g : spec.gens)
    mixture_instance(g).for_each_support([&](const BitString& x, const Rational& p) { acc[x.value()] += w * p; });
  std::vector<BitStringDist::Entry> entries;
  for (const auto& [v, p] : acc) entries.emplace_back(BitString(v, n), p);
  return BitStringDist::from_entries(n, entries);
}

ClaimHighReport verify_claim_high(const KolmogorovOracle& oracle, unsigned n, unsigned delta) {
  if (delta > n) fail(ErrorCode::kConfigInvalid, "gap above n");
  if (n > kEnumerationCap) fail(ErrorCode::kBudgetExceeded, "enumerating above n = 24");
  const unsigned s = n - delta;
  if (s > oracle.max_program_len()) fail(ErrorCode::kOracleMiss, "n − Δ above the oracle's L_max");
  if (n > oracle.config().max_output_len) fail(ErrorCode::kOracleMiss, "n above the oracle's output limit");
  ClaimHighReport r;
  r.n = n;
  r.delta = delta;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    const auto k = oracle.lookup(BitString(v, n));
    if (k && *k <= s) ++r.count_enumerated;
  }
  r.count_oracle = count_low_complexity(oracle, n, s);
  r.cross_check = r.count_enumerated == r.count_oracle;
  r.mass = make_rational(static_cast<std::int64_t>(r.count_enumerated), std::uint64_t{1} << n);
  r.bound = pow2(1 - static_cast<long>(delta));
  r.holds = r.mass <= r.bound;
  return r;
}

std::string_view to_string(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::kHolds: return "holds";
    case ClaimStatus::kFails: return "fails";
    case ClaimStatus::kPreconditionUnmet: return "precondition_unmet";
  }
  return "?";
}

Interval default_g(unsigned n, const Rational& epsilon) {
  return exp2_of(n_pow(n, epsilon), 0, true);
}

ClaimLowReport verify_claim_low(const BitStringDist& gen, const Rational& g, const Rational& tau) {
  require_exact(gen, "low-complexity claim");
  const unsigned n = gen.n();
  if (n > kEnumerationCap) fail(ErrorCode::kBudgetExceeded, "enumerating above n = 24");
  if (g <= 0 || g > 1) fail(ErrorCode::kConfigInvalid, "G must lie in (0, 1]");
  const Power nt = n_pow(n, tau);
  ClaimLowReport r;
  r.n = n;
  r.g = g;
  r.tau = tau;
  r.n_tau = nt.enclosure;

  const Rational floor_a = pow2(-static_cast<long>(n));
  const Interval edge_c = Interval(g) * exp2_of(nt, -static_cast<long>(n), false);
  std::optional<Rational> exact_edge;
  if (nt.integer) exact_edge = g * pow2(static_cast<long>(*nt.integer) - static_cast<long>(n));
  gen.for_each_support([&](const BitString&, const Rational& p) {
    if (p < floor_a) {
      r.mass_a += p;
      return;
    }
    bool in_c;
    if (exact_edge) {
      in_c = p >= *exact_edge;
    } else {
      const Certainty ge = certainly_ge(p, edge_c);
      if (ge == Certainty::kUndecided) fail(ErrorCode::kConfigInvalid, "partition edge unresolved at 256 bits");
      in_c = ge == Certainty::kTrue;
    }
    if (in_c) {
      ++r.size_c;
      r.mass_c += p;
    } else {
      ++r.size_b;
      r.mass_b += p;
    }
  });
  r.size_a = (std::uint64_t{1} << n) - r.size_b - r.size_c;

  r.sd = sd_to_uniform(gen);
  const Interval one = Interval::from_int(1);
  const Interval tail = exp2_of(nt, 0, true);
  r.sd_hypothesis = one - tail;
  r.count_bound = exp2_of(nt, static_cast<long>(n), true) * Interval(r.slack);
  r.mass_c_bound = one - Interval(g) - tail;
  r.count_ok = certainly_le(Rational(static_cast<long>(r.size_b + r.size_c)), r.count_bound) == Certainty::kTrue;
  r.mass_ok = certainly_ge(r.mass_c, r.mass_c_bound) == Certainty::kTrue;
  if (certainly_ge(r.sd, r.sd_hypothesis) != Certainty::kTrue) {
    r.status = ClaimStatus::kPreconditionUnmet;
  } else {
    r.status = r.count_ok && r.mass_ok ? ClaimStatus::kHolds : ClaimStatus::kFails;
  }
  return r;
}

DistinguisherReport distinguisher_report(const Decider& decider, const BitStringDist& gen, const GapKParams& params,
                                         const KolmogorovOracle& oracle) {
  require_exact(gen, "distinguisher");
  const unsigned n = gen.n();
  if (n != params.n) fail(ErrorCode::kLengthMismatch, "generator length differs from params.n");
  if (n > kEnumerationCap) fail(ErrorCode::kBudgetExceeded, "enumerating above n = 24");
  params.validate();
  const Rational u = pow2(-static_cast<long>(n));
  DistinguisherReport r;
  r.decider = decider.name;
  Rational q_err;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    const BitString x(v, n);
    const Rational acc = decider.accept(x);
    if (acc < 0 || acc > 1) fail(ErrorCode::kConfigInvalid, "acceptance probability outside [0, 1]");
    const Rational p = gen.prob(x);
    const GapKLabel label = label_instance(x, params, oracle).label;
    r.pr_gen_yes += p * acc;
    r.pr_u_yes += u * acc;
    const Rational q = (p + u) / 2;
    switch (label) {
      case GapKLabel::kYes:
        q_err += q * (1 - acc);
        r.r_u += u * (2 * acc - 1);
        r.pr_u_not_no += u;
        break;
      case GapKLabel::kNo:
        q_err += q * acc;
        r.r_gen += p * (1 - 2 * acc);
        r.pr_gen_not_yes += p;
        break;
      case GapKLabel::kPromiseViolating:
        r.r_gen += p * (1 - acc);
        r.r_u += u * acc;
        r.pr_gen_not_yes += p;
        r.pr_u_not_no += u;
        break;
    }
  }
  r.error_sum = q_err;
  const Rational diff = r.pr_gen_yes - r.pr_u_yes;
  r.advantage = abs(diff);
  r.residual = 2 * r.error_sum - (1 - diff - r.r_gen - r.r_u);
  r.gen_term_bound = Interval::from_int(2) * default_g(n, params.epsilon);
  r.u_term_bound = Interval(pow2(1 - static_cast<long>(params.delta)));
  return r;
}

OracleAdvantageReport oracle_label_advantage(const BitStringDist& gen, const GapKParams& params,
                                             const KolmogorovOracle& oracle, const Rational& tau) {
  OracleAdvantageReport r;
  r.distinguisher = distinguisher_report(make_oracle_decider(params, oracle), gen, params, oracle);
  const unsigned n = gen.n();
  r.gen_sd = sd_to_uniform(gen);
  r.far_threshold = Interval::from_int(1) - exp2_of(n_pow(n, tau), 0, true);
  std::uint64_t low = 0;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v)
    if (label_instance(BitString(v, n), params, oracle).label == GapKLabel::kYes) ++low;
  r.uniform_low_mass = make_rational(static_cast<std::int64_t>(low), std::uint64_t{1} << n);
  r.bound = r.far_threshold - Interval(r.uniform_low_mass);
  if (certainly_ge(r.gen_sd, r.far_threshold) != Certainty::kTrue) {
    r.status = ClaimStatus::kPreconditionUnmet;
  } else {
    r.status = certainly_ge(r.distinguisher.advantage, r.bound) == Certainty::kTrue ? ClaimStatus::kHolds
                                                                                    : ClaimStatus::kFails;
  }
  return r;
}

}  // namespace mclab
