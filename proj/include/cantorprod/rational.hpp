// Copyright 2026 The cantorprod Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Exact arithmetic on top of GMP. Every value that feeds a certified result
// is a Rational; floating point only ever appears in rendered text.

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace cantorprod {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p/q", a plain integer, or a decimal such as "0.333" or "2.5e-4"
/// into an exact rational (decimal text is never routed through a double).
/// Throws Error{ParseError}.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms with a positive denominator; integers keep the
/// "/1" suffix so the format is uniform.
std::string to_exact_string(const Rational& x);

/// Direction used when a rational is cut to a fixed number of digits.
enum class Rounding {
  TowardZero,
  AwayFromZero,
  Down,     // toward -infinity
  Up,       // toward +infinity
  Nearest,  // ties away from zero
};

/// Decimal rendering with `significant` significant digits. Fixed notation
/// for moderate exponents, otherwise "d.ddde-XX". Trailing zeros are trimmed.
std::string to_decimal(const Rational& x, int significant, Rounding mode);

/// True when the decimal rendering with `significant` digits is exact.
bool decimal_is_exact(const Rational& x, int significant);

Integer power(const Integer& base, unsigned long exponent);
Rational power(const Rational& base, unsigned long exponent);

/// Exact square root when one exists.
bool exact_sqrt(const Rational& x, Rational& root);

}  // namespace cantorprod
