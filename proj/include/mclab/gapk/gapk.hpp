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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mclab/core/interval.hpp"
#include "mclab/dist/bitstring_dist.hpp"
#include "mclab/utm/oracle.hpp"

namespace mclab {

/// GapK[s1, s2] thresholds at length n.
struct GapKParams {
  unsigned n = 0;
  unsigned s1 = 0;
  unsigned s2 = 0;
  unsigned delta = 0;
  Rational epsilon{1, 2};

  /// ceil((log2 n)^2).
  static unsigned default_delta(unsigned n);
  /// s1 = n − ceil(n^ε), s2 = n − Δ; Δ = default_delta(n) unless given.
  static GapKParams preset(unsigned n, const Rational& epsilon = Rational(1, 2), std::optional<unsigned> delta = {});
  /// Decider form GapK[s − Δ, s].
  static GapKParams decider(unsigned n, unsigned s, unsigned delta);

  /// ConfigInvalid unless s1 < s2, s2 − s1 >= Δ and Δ >= 1.
  void validate() const;
};

enum class GapKLabel { kYes, kNo, kPromiseViolating };
std::string_view to_string(GapKLabel label);

struct GapKInstance {
  BitString x;
  GapKLabel label = GapKLabel::kPromiseViolating;
  /// K_T(x); nullopt when K_T(x) exceeds the oracle's L_max.
  std::optional<unsigned> k;
  unsigned s1 = 0;
  unsigned s2 = 0;

  /// {"x": "len:hex", "k": int | null, "label": "yes" | "no" | "promise", "s1": int, "s2": int}
  std::string to_json_line() const;
};

/// Yes iff K_T(x) <= s1, No iff K_T(x) >= s2. OracleMiss when the oracle
/// cannot decide: x longer than its output limit, or K_T(x) > L_max with
/// s2 > L_max + 1.
GapKInstance label_instance(const BitString& x, const GapKParams& params, const KolmogorovOracle& oracle);

/// Every string of length n, labelled, in value order.
std::vector<GapKInstance> label_all(const GapKParams& params, const KolmogorovOracle& oracle);

using Estimator = std::function<Rational(const BitString&)>;

/// yes iff estimate(x) >= 2^(−s + Δ/2), decided exactly.
bool threshold_decider(const BitString& x, const Estimator& estimate, unsigned s, unsigned delta);

/// A decider as its acceptance probability Pr[yes <- A(x)].
struct Decider {
  std::string name;
  std::function<Rational(const BitString&)> accept;
};

Decider make_threshold_decider(Estimator estimate, unsigned s, unsigned delta);
/// Accepts exactly the oracle's Yes instances.
Decider make_oracle_decider(const GapKParams& params, const KolmogorovOracle& oracle);
/// Accepts with probability 1/2 everywhere.
Decider make_coin_decider();

/// Estimator returning the exact probability under d.
Estimator exact_estimator(const BitStringDist& d);

struct DeciderErrorReport {
  Rational yes_error_mass;   // Pr[no <- A(x) ∧ x ∈ L_Yes]
  Rational no_error_mass;    // Pr[yes <- A(x) ∧ x ∈ L_No]
  Rational total;
  Rational promise_mass;     // Pr[x is promise-violating], never an error
  std::string bound_name;
  Interval bound;
  bool bound_checked = false;
};

/// Exact masses over supp(Q). The bound checked is yes_error_mass <= 2^(−Δ/3).
DeciderErrorReport exact_error_account(const Decider& decider, const BitStringDist& q, const GapKParams& params,
                                       const KolmogorovOracle& oracle);

/// Same masses; the bound checked is total >= 1/2 − 1/n^k.
DeciderErrorReport strong_error_account(const Decider& decider, const BitStringDist& q, const GapKParams& params,
                                        const KolmogorovOracle& oracle, unsigned k = 1);

struct BandReport {
  Rational threshold_sq;      // (2^(−s + Δ/2))^2 = 2^(Δ − 2s)
  std::uint64_t errors = 0;   // support strings on which the decider errs
  Rational band_mass;         // errors with p in [(99/100)·thr, (100/99)·thr)
  Rational low_mass;          // errors in Low
  Rational high_mass;         // errors in High with K_T >= s
  std::vector<BitString> outside;  // errors in none of the three sets
  Rational yes_error_mass;
  Interval yes_bound;         // 2^(−Δ/3)
  bool yes_bound_checked = false;
};

/// Enumerates supp(Q) for the threshold decider driven by `estimate`, with
/// s = params.s2 and Δ = params.delta, and classifies every error.
BandReport decider_band_check(const Estimator& estimate, const BitStringDist& q, const GapKParams& params,
                              const KolmogorovOracle& oracle);

struct HighEncodingReport {
  std::uint64_t high_size = 0;
  bool size_bound_ok = false;          // |High| <= (100/99)·2^(s − Δ/2)
  unsigned overhead_bits = 0;          // opcode and header fields
  unsigned index_bits = 0;
  unsigned description_bits = 0;       // overhead_bits + index_bits
  unsigned effective_threshold = 0;    // description_bits + 1
  bool all_reproduced = false;         // every description ran to its member
  std::uint64_t max_steps = 0;
  /// Mass of y in High with K_T(y) >= effective_threshold implied by the
  /// descriptions; 0 whenever all_reproduced.
  Rational no_error_mass;
};

/// Runs the INDEX description of every member of High under step_cap and
/// reports the measured encoder overhead.
HighEncodingReport verify_high_encodings(const DistributionRegistry& registry, std::uint64_t code, unsigned n,
                                         unsigned s, unsigned delta, std::uint64_t step_cap);

}  // namespace mclab
