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

#include <mpfr.h>

#include <string>

#include "mclab/core/rational.hpp"

namespace mclab {

enum class Certainty { kTrue, kFalse, kUndecided };

class Interval;
/// Is x <= every point of bound? kUndecided when x lies inside it.
Certainty certainly_le(const Rational& x, const Interval& bound);
/// Is x >= every point of bound?
Certainty certainly_ge(const Rational& x, const Interval& bound);

/// Closed real interval with outward-rounded MPFR endpoints.
///
/// Used wherever a bound involves an irrational quantity (exp, n^tau) and has
/// to be compared against an exact rational without losing soundness.
class Interval {
 public:
  static constexpr mpfr_prec_t kPrecision = 256;

  Interval();
  explicit Interval(const Rational& exact);
  static Interval from_int(long v) { return Interval(Rational(v)); }

  Interval(const Interval& other);
  Interval& operator=(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);
  Interval operator-() const;

  Interval exp() const;
  Interval log() const;
  /// this^y for this > 0.
  Interval pow(const Interval& y) const;
  /// 2^this.
  Interval exp2() const;

  double lower() const;
  double upper() const;
  double midpoint() const;
  std::string str() const;

  friend Certainty certainly_le(const Rational& x, const Interval& bound);
  friend Certainty certainly_ge(const Rational& x, const Interval& bound);

 private:
  mpfr_t lo_;
  mpfr_t hi_;
  bool live_ = false;
  void init();
};

}  // namespace mclab
