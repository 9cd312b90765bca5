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

#include "cantorprod/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <string>

#include "cantorprod/errors.hpp"

namespace cantorprod {

namespace {

[[noreturn]] void parse_fail(std::string_view text) {
  throw Error(ErrorCode::ParseError,
              "cannot parse '" + std::string(text) + "' as a rational number");
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) parse_fail(whole);
  Integer v(std::string(s), 10);
  return neg ? Integer(-v) : v;
}

Integer ten_to(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

Integer power(const Integer& base, unsigned long exponent) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

Rational power(const Rational& base, unsigned long exponent) {
  Rational r(power(Integer(base.get_num()), exponent),
             power(Integer(base.get_den()), exponent));
  r.canonicalize();
  return r;
}

bool exact_sqrt(const Rational& x, Rational& root) {
  if (x < 0) return false;
  if (mpz_perfect_square_p(x.get_num_mpz_t()) == 0 ||
      mpz_perfect_square_p(x.get_den_mpz_t()) == 0)
    return false;
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), x.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), x.get_den_mpz_t());
  root = Rational(n, d);
  root.canonicalize();
  return true;
}

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  if (s.empty()) parse_fail(text);

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(s.substr(0, slash), text);
    std::string_view den_text = s.substr(slash + 1);
    if (!all_digits(den_text)) parse_fail(text);
    Integer den(std::string(den_text), 10);
    if (den == 0) parse_fail(text);
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

  bool neg = false;
  if (s.front() == '+' || s.front() == '-') {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  long exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = s.substr(e + 1);
    std::string_view digits = exp_text;
    if (!digits.empty() && (digits.front() == '+' || digits.front() == '-'))
      digits.remove_prefix(1);
    if (!all_digits(digits) || digits.size() > 6) parse_fail(text);
    exp10 = std::strtol(std::string(exp_text).c_str(), nullptr, 10);
    s = s.substr(0, e);
  }
  std::string_view int_part = s;
  std::string_view frac_part;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    int_part = s.substr(0, dot);
    frac_part = s.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) parse_fail(text);
  if (!int_part.empty() && !all_digits(int_part)) parse_fail(text);
  if (!frac_part.empty() && !all_digits(frac_part)) parse_fail(text);

  std::string mantissa = std::string(int_part) + std::string(frac_part);
  Integer num(mantissa.empty() ? std::string("0") : mantissa, 10);
  if (neg) num = -num;
  exp10 -= static_cast<long>(frac_part.size());
  Rational r;
  if (exp10 >= 0) {
    r = Rational(num * ten_to(static_cast<unsigned long>(exp10)));
  } else {
    r = Rational(num, ten_to(static_cast<unsigned long>(-exp10)));
    r.canonicalize();
  }
  return r;
}

std::string to_exact_string(const Rational& x) {
  Rational c(x);
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

namespace {

// floor(log10(a)) for a > 0.
long decimal_exponent(const Rational& a) {
  long e = static_cast<long>(mpz_sizeinbase(a.get_num_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(a.get_den_mpz_t(), 10));
  auto pow10 = [](long k) {
    return k >= 0 ? Rational(ten_to(static_cast<unsigned long>(k)))
                  : Rational(Integer(1), ten_to(static_cast<unsigned long>(-k)));
  };
  while (pow10(e) > a) --e;
  while (pow10(e + 1) <= a) ++e;
  return e;
}

struct Digits {
  std::string digits;  // exactly `significant` characters
  long exponent = 0;   // value = 0.d1d2... * 10^(exponent+1)
  bool exact = false;
};

Digits cut_digits(const Rational& a, int significant, bool round_up_mag,
                  bool nearest) {
  Digits out;
  long e = decimal_exponent(a);
  long shift = significant - 1 - e;
  Rational scaled;
  if (shift >= 0)
    scaled = a * Rational(ten_to(static_cast<unsigned long>(shift)));
  else
    scaled = a / Rational(ten_to(static_cast<unsigned long>(-shift)));
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  Rational rem = scaled - Rational(q);
  out.exact = rem == 0;
  if (!out.exact) {
    if (nearest) {
      if (rem * 2 >= 1) q += 1;
    } else if (round_up_mag) {
      q += 1;
    }
  }
  if (q == ten_to(static_cast<unsigned long>(significant))) {
    q = ten_to(static_cast<unsigned long>(significant - 1));
    ++e;
  }
  out.digits = q.get_str();
  out.exponent = e;
  return out;
}

}  // namespace

std::string to_decimal(const Rational& x, int significant, Rounding mode) {
  if (significant < 1) significant = 1;
  if (x == 0) return "0";
  bool neg = x < 0;
  Rational a = neg ? Rational(-x) : x;
  bool up_mag = false;
  bool nearest = false;
  switch (mode) {
    case Rounding::TowardZero: up_mag = false; break;
    case Rounding::AwayFromZero: up_mag = true; break;
    case Rounding::Down: up_mag = neg; break;
    case Rounding::Up: up_mag = !neg; break;
    case Rounding::Nearest: nearest = true; break;
  }
  Digits d = cut_digits(a, significant, up_mag, nearest);
  const std::string& ds = d.digits;
  const long e = d.exponent;
  std::string out = neg ? "-" : "";

  auto trim = [](std::string s) {
    if (s.find('.') == std::string::npos) return s;
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
  };

  if (e >= -6 && e < significant) {
    std::string body;
    if (e >= 0) {
      body = ds.substr(0, static_cast<std::size_t>(e + 1));
      if (static_cast<std::size_t>(e + 1) < ds.size())
        body += "." + ds.substr(static_cast<std::size_t>(e + 1));
    } else {
      body = "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + ds;
    }
    return out + trim(body);
  }
  std::string mant = ds.substr(0, 1);
  if (ds.size() > 1) mant += "." + ds.substr(1);
  mant = trim(mant);
  std::string exp_text = std::to_string(e < 0 ? -e : e);
  if (exp_text.size() < 2) exp_text = "0" + exp_text;
  return out + mant + (e < 0 ? "e-" : "e+") + exp_text;
}

bool decimal_is_exact(const Rational& x, int significant) {
  if (x == 0) return true;
  Rational a = x < 0 ? Rational(-x) : x;
  return cut_digits(a, significant < 1 ? 1 : significant, false, false).exact;
}

}  // namespace cantorprod
