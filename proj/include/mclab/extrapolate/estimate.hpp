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
#include <string>
#include <vector>

#include "mclab/core/interval.hpp"
#include "mclab/extrapolate/extrapolator.hpp"

namespace mclab {

struct EstimateConfig {
  std::uint64_t reps = 100000;
  Rational c{11, 10};
  unsigned q = 1;
  Rational a{1};
  Rational b{1};
  Rational d{1};

  /// a = n^{q+2}, b = d = n^{q+4}.
  static EstimateConfig defaults(unsigned n, unsigned q = 1, std::uint64_t reps = 100000);
  void validate() const;
};

struct EstimateIndex {
  std::uint64_t count = 0;  // Count_{y_<i}(y_i)
  Rational p_tilde;         // count / reps
};

struct EstimateResult {
  BitString y;
  std::uint64_t reps = 0;
  std::vector<EstimateIndex> indices;
  Rational product;  // Π p̃[y_i], denominator divides reps^n
  bool off_support = false;

  /// One JSON object per index: {y, i, count, reps, p_tilde}.
  std::string audit_jsonl() const;
};

/// For i = 1..n, run ext on y_<i `reps` times, set p̃[y_i] to the fraction
/// of runs returning y_i, and output Π p̃[y_i]. Index i of y draws from the
/// substream (seed; y, |y|, i).
EstimateResult estimate(const BitString& y, const Extrapolator& ext, const EstimateConfig& cfg, std::uint64_t seed);

/// Π ext(i, y_<i)[y_i] with exact tabular conditionals in place of p̃.
Rational estimate_exact_substitution(const BitString& y, const Extrapolator& ext);

/// 2n·exp(−2·reps/d²), enclosed.
Interval hoeffding_failure_bound(const EstimateConfig& cfg, unsigned n);

/// 6 / n^{q+1}.
Rational estimate_failure_schema(unsigned n, unsigned q);

struct AccuracyReport {
  Rational pass_mass;        // Σ D(y) over y with D(y)/c <= estimate <= c·D(y)
  Rational off_support_mass;
  std::uint64_t strings = 0;
  std::uint64_t passing = 0;
};

/// Runs estimate for every y in supp(D).
AccuracyReport estimate_accuracy(const BitStringDist& d, const Extrapolator& ext, const EstimateConfig& cfg,
                                 std::uint64_t seed);

struct HoeffdingTrialReport {
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;  // trials with some |p̃ − conditional| > 1/d
};

/// Repeats estimate on y drawn from D (trial t uses substream t) and counts
/// trials whose per-index deviation exceeds 1/d anywhere.
HoeffdingTrialReport hoeffding_trials(const BitStringDist& d, const Extrapolator& ext, const EstimateConfig& cfg,
                                      std::uint64_t trials, std::uint64_t seed);

}  // namespace mclab
