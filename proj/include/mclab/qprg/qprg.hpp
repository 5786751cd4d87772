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
#include <optional>
#include <string>
#include <vector>

#include "mclab/core/interval.hpp"
#include "mclab/dist/bitstring_dist.hpp"
#include "mclab/gapk/gapk.hpp"
#include "mclab/utm/oracle.hpp"

namespace mclab {

/// Statistical side of a generator: its exact output table and a claimed
/// lower bound on SD(gen, U), verified at construction.
struct QprgSpec {
  std::string name;
  BitStringDist gen;
  Rational claimed_sd;

  /// ConfigInvalid when SD(gen, U) < claimed_sd.
  static QprgSpec make(std::string name, BitStringDist gen, Rational claimed_sd = Rational(0));
  unsigned n() const { return gen.n(); }
};

/// Generator family indexed by advice mu in [0, n); mu_star is the good advice.
struct NuQprgSpec {
  std::string name;
  std::vector<BitStringDist> gens;
  unsigned mu_star = 0;
  Rational claimed_sd;

  /// LengthMismatch unless there are n advice values, all of length n;
  /// ConfigInvalid when SD(gens[mu_star], U) < claimed_sd.
  static NuQprgSpec make(std::string name, std::vector<BitStringDist> gens, unsigned mu_star,
                         Rational claimed_sd = Rational(0));
  unsigned n() const { return gens.empty() ? 0 : gens.front().n(); }
};

/// Block length A, copy count B and the output length n = A·B before
/// truncation.
struct AmplifyShape {
  unsigned target_n = 0;
  Rational tau;
  unsigned a = 0;  // ceil(n^((1 − τ)/2))
  unsigned b = 0;  // ceil(n^((1 + τ)/2))
  bool truncated() const { return a * b > target_n; }
};

AmplifyShape amplify_shape(unsigned n, const Rational& tau);

struct AmplifiedQprg {
  QprgSpec base;
  AmplifyShape shape;
  Rational base_sd;        // SD(base, U_A)
  Rational product_sd;     // SD(base^{⊗B}, U_{A·B}), from the factor form
  Interval bound;          // 1 − exp(−B·base_sd)
  Certainty bound_holds = Certainty::kUndecided;
  bool degenerate = false; // base_sd = 0: the bound is vacuous
  /// Output distribution over target_n bits (the first target_n of A·B).
  BitStringDist output;
  Rational output_sd;      // SD(output, U_n); equals product_sd when untruncated
};

/// Gen*: B independent copies of base at length A, truncated to n bits.
/// LengthMismatch when base.n() != A; BudgetExceeded when A·B > 24.
AmplifiedQprg amplify(const QprgSpec& base, unsigned n, const Rational& tau);

/// Explicit-B variant without truncation: output length base.n()·copies.
/// Above 16 output bits `output` is left empty and output_sd = product_sd.
AmplifiedQprg amplify_copies(const QprgSpec& base, unsigned copies);

/// ½·gen + ½·U.
BitStringDist mixture_instance(const BitStringDist& gen);

/// (1/n)·Σ_mu [½·gen(mu) + ½·U].
BitStringDist nu_mixture_instance(const NuQprgSpec& spec);

struct ClaimHighReport {
  unsigned n = 0;
  unsigned delta = 0;
  std::uint64_t count_enumerated = 0;   // by lookup over {0,1}^n
  std::uint64_t count_oracle = 0;       // via count_low_complexity
  Rational mass;                        // Pr_U[K_T(x) <= n − Δ]
  Rational bound;                       // 2^(−Δ+1)
  bool holds = false;
  bool cross_check = false;
};

/// Exact uniform mass of {x : K_T(x) <= n − Δ}; OracleMiss when n − Δ > L_max
/// or n exceeds the oracle's output limit.
ClaimHighReport verify_claim_high(const KolmogorovOracle& oracle, unsigned n, unsigned delta);

enum class ClaimStatus { kHolds, kFails, kPreconditionUnmet };
std::string_view to_string(ClaimStatus s);

struct ClaimLowReport {
  unsigned n = 0;
  Rational g;
  Rational tau;
  Interval n_tau;               // n^τ
  std::uint64_t size_a = 0, size_b = 0, size_c = 0;
  Rational mass_a, mass_b, mass_c;
  Rational sd;                  // SD(gen, U)
  Interval sd_hypothesis;       // 1 − 2^(−n^τ)
  Interval count_bound;         // 2^(n − n^τ)·slack
  Rational slack{1};
  Interval mass_c_bound;        // 1 − G − 2^(−n^τ)
  bool count_ok = false;
  bool mass_ok = false;
  ClaimStatus status = ClaimStatus::kPreconditionUnmet;
};

/// Partition A: p < 2^−n, B: 2^−n <= p < G·2^(−n + n^τ), C: the rest; checks
/// |B| + |C| <= 2^(n − n^τ) and mass(C) >= 1 − G − 2^(−n^τ) when
/// SD(gen, U) >= 1 − 2^(−n^τ).
ClaimLowReport verify_claim_low(const BitStringDist& gen, const Rational& g, const Rational& tau);

/// G = 2^(−n^ε), enclosed.
Interval default_g(unsigned n, const Rational& epsilon);

struct DistinguisherReport {
  std::string decider;
  Rational pr_gen_yes;
  Rational pr_u_yes;
  Rational advantage;             // |pr_gen_yes − pr_u_yes|
  Rational error_sum;             // E over ½·gen + ½·U
  Rational r_gen;                 // Σ gen(x)[1_No(1 − 2acc) + 1_P(1 − acc)]
  Rational r_u;                   // Σ U(x)[1_Yes(2acc − 1) + 1_P·acc]
  Rational residual;              // 2E − (1 − (pr_gen_yes − pr_u_yes) − r_gen − r_u)
  Rational pr_gen_not_yes;        // bounds r_gen
  Rational pr_u_not_no;           // bounds r_u
  Interval gen_term_bound;        // 2·2^(−n^ε)
  Interval u_term_bound;          // 2^(−Δ + 1)
};

/// B outputs 1 iff the decider says yes. All required quantities exact.
DistinguisherReport distinguisher_report(const Decider& decider, const BitStringDist& gen, const GapKParams& params,
                                         const KolmogorovOracle& oracle);

struct OracleAdvantageReport {
  DistinguisherReport distinguisher;
  Rational gen_sd;
  Interval far_threshold;      // 1 − 2^(−n^τ)
  Rational uniform_low_mass;   // Pr_U[K_T(x) <= s1]
  Interval bound;              // 1 − 2^(−n^τ) − uniform_low_mass
  ClaimStatus status = ClaimStatus::kPreconditionUnmet;
};

/// Advantage of the oracle-label decider on gen, compared against
/// 1 − 2^(−n^τ) − Pr_U[K_T <= s1]; PreconditionUnmet unless gen is
/// (1 − 2^(−n^τ))-far from uniform.
OracleAdvantageReport oracle_label_advantage(const BitStringDist& gen, const GapKParams& params,
                                             const KolmogorovOracle& oracle, const Rational& tau);

}  // namespace mclab
