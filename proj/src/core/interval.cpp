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

#include "mclab/core/interval.hpp"

#include <algorithm>
#include <utility>

#include "mclab/core/error.hpp"

namespace mclab {

void Interval::init() {
  mpfr_init2(lo_, kPrecision);
  mpfr_init2(hi_, kPrecision);
  live_ = true;
}

Interval::Interval() {
  init();
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Rational& exact) {
  init();
  mpfr_set_q(lo_, exact.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, exact.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Interval& other) {
  init();
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval& Interval::operator=(const Interval& other) {
  if (this != &other) {
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval::Interval(Interval&& other) noexcept {
  init();
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(Interval&& other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

Interval::~Interval() {
  if (live_) {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
  }
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r;
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r;
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  Interval r;
  mpfr_t t;
  mpfr_init2(t, Interval::kPrecision);
  const mpfr_t* xs[2] = {&a.lo_, &a.hi_};
  const mpfr_t* ys[2] = {&b.lo_, &b.hi_};
  bool first = true;
  for (auto* x : xs) {
    for (auto* y : ys) {
      mpfr_mul(t, *x, *y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, *x, *y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (mpfr_sgn(b.lo_) <= 0 && mpfr_sgn(b.hi_) >= 0) fail(ErrorCode::kConfigInvalid, "interval division by zero");
  Interval inv;
  mpfr_ui_div(inv.lo_, 1, b.hi_, MPFR_RNDD);
  mpfr_ui_div(inv.hi_, 1, b.lo_, MPFR_RNDU);
  return a * inv;
}

Interval Interval::operator-() const {
  Interval r;
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval Interval::exp() const {
  Interval r;
  mpfr_exp(r.lo_, lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::log() const {
  if (mpfr_sgn(lo_) <= 0) fail(ErrorCode::kConfigInvalid, "log of non-positive interval");
  Interval r;
  mpfr_log(r.lo_, lo_, MPFR_RNDD);
  mpfr_log(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::pow(const Interval& y) const { return (y * log()).exp(); }

Interval Interval::exp2() const {
  Interval r;
  mpfr_exp2(r.lo_, lo_, MPFR_RNDD);
  mpfr_exp2(r.hi_, hi_, MPFR_RNDU);
  return r;
}

double Interval::lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }
double Interval::midpoint() const { return 0.5 * (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN)); }

std::string Interval::str() const {
  char buf[128];
  mpfr_snprintf(buf, sizeof buf, "[%.17Rg, %.17Rg]", lo_, hi_);
  return buf;
}

// x <= [lo, hi] is certain when x <= lo and refuted when x > hi.
Certainty certainly_le(const Rational& x, const Interval& bound) {
  if (mpfr_cmp_q(bound.lo_, x.get_mpq_t()) >= 0) return Certainty::kTrue;
  if (mpfr_cmp_q(bound.hi_, x.get_mpq_t()) < 0) return Certainty::kFalse;
  return Certainty::kUndecided;
}

Certainty certainly_ge(const Rational& x, const Interval& bound) {
  if (mpfr_cmp_q(bound.hi_, x.get_mpq_t()) <= 0) return Certainty::kTrue;
  if (mpfr_cmp_q(bound.lo_, x.get_mpq_t()) > 0) return Certainty::kFalse;
  return Certainty::kUndecided;
}

}  // namespace mclab
