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

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace mclab {

using Rational = mpq_class;
using BigInt = mpz_class;

Rational make_rational(std::int64_t num, std::uint64_t den = 1);

/// Accepts "p/q", "p", or a finite decimal such as "0.25" (converted exactly).
Rational parse_rational(std::string_view text);

/// Canonical lowest-terms rendering: "p/q", or "p" when the denominator is 1.
std::string to_fraction_string(const Rational& r);

/// Unreduced rendering "num/den", used where the denominator itself is data.
std::string to_fraction_string(const BigInt& num, const BigInt& den);

/// 2^e for any integer e.
Rational pow2(long e);

Rational pow(const Rational& base, unsigned long e);

/// Sign of x - 2^(p/q) for x >= 0, q >= 1; exact (compares x^q with 2^p).
int compare_pow2(const Rational& x, long p, unsigned long q);

/// Exact double -> rational (every finite binary64 value is dyadic).
Rational from_double(double v);

inline double to_double(const Rational& r) { return r.get_d(); }

/// Smallest integer m >= 0 with m^q >= n^p (the ceiling of n^(p/q)).
std::uint64_t ceil_root_pow(std::uint64_t n, unsigned long p, unsigned long q);

}  // namespace mclab
