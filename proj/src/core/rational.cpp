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

#include "mclab/core/rational.hpp"

#include <cmath>

#include "mclab/core/error.hpp"

namespace mclab {

Rational make_rational(std::int64_t num, std::uint64_t den) {
  if (den == 0) fail(ErrorCode::kParse, "zero denominator");
  Rational r(BigInt(std::to_string(num)), BigInt(std::to_string(den)));
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { fail(ErrorCode::kParse, "not a rational number: '" + s + "'"); };
  if (s.empty()) bad();
  try {
    if (auto slash = s.find('/'); slash != std::string::npos) {
      BigInt num(s.substr(0, slash), 10), den(s.substr(slash + 1), 10);
      if (den == 0) bad();
      Rational r(num, den);
      r.canonicalize();
      return r;
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      if (digits.empty() || digits == "-" || digits.find_first_not_of("-0123456789") != std::string::npos) bad();
      BigInt num(digits, 10);
      BigInt den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, s.size() - dot - 1);
      Rational r(num, den);
      r.canonicalize();
      return r;
    }
    return Rational(BigInt(s, 10));
  } catch (const std::invalid_argument&) {
    bad();
  }
  return {};
}

std::string to_fraction_string(const Rational& r) {
  Rational c(r);
  c.canonicalize();
  return c.get_str();
}

std::string to_fraction_string(const BigInt& num, const BigInt& den) {
  return num.get_str() + "/" + den.get_str();
}

Rational pow2(long e) {
  Rational r(1);
  if (e >= 0) mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  else mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  return r;
}

Rational pow(const Rational& base, unsigned long e) {
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

int compare_pow2(const Rational& x, long p, unsigned long q) {
  if (q == 0) fail(ErrorCode::kConfigInvalid, "compare_pow2 with q = 0");
  if (sgn(x) < 0) return -1;
  if (sgn(x) == 0) return -1;
  Rational lhs = pow(x, q);
  return cmp(lhs, pow2(p));
}

Rational from_double(double v) {
  if (!std::isfinite(v)) fail(ErrorCode::kParse, "non-finite double");
  Rational r(v);
  return r;
}

std::uint64_t ceil_root_pow(std::uint64_t n, unsigned long p, unsigned long q) {
  if (q == 0) fail(ErrorCode::kConfigInvalid, "ceil_root_pow with q = 0");
  BigInt target;
  mpz_ui_pow_ui(target.get_mpz_t(), n, p);
  double guess = std::pow(static_cast<double>(n), static_cast<double>(p) / static_cast<double>(q));
  std::uint64_t m = guess > 2 ? static_cast<std::uint64_t>(guess) - 2 : 0;
  for (;; ++m) {
    BigInt mq;
    mpz_ui_pow_ui(mq.get_mpz_t(), m, q);
    if (mq >= target) return m;
  }
}

}  // namespace mclab
