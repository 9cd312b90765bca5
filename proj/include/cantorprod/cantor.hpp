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

// The uniform lambda-Cantor system: m maps f_i(x) = lambda*x + i*delta on
// [0,1], their symbolic words and basic intervals, and the family of words
// whose leading digit is nonzero.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cantorprod/rational.hpp"

namespace cantorprod {

enum class Mode { Certified, Exploratory };

std::string_view to_string(Mode mode) noexcept;

/// Validated (m, lambda) pair. Construct through params_new.
class Params {
 public:
  int m() const noexcept { return m_; }
  const Rational& lambda() const noexcept { return lambda_; }
  /// Gap between consecutive children, (1 - m*lambda) / (m - 1).
  const Rational& gap() const noexcept { return gap_; }
  /// Spacing of child left endpoints, lambda + gap.
  const Rational& step() const noexcept { return step_; }
  Mode mode() const noexcept { return mode_; }
  bool certified() const noexcept { return mode_ == Mode::Certified; }
  /// 1/(m+1) <= lambda < 1/m, independent of the requested mode.
  bool in_theorem_range() const;

 private:
  friend Params params_new(int, const Rational&, Mode);
  Params(int m, Rational lambda, Mode mode);

  int m_;
  Rational lambda_;
  Rational gap_;
  Rational step_;
  Mode mode_;
};

/// Throws InvalidM, InvalidRatio, or OutOfTheoremRange (certified mode only).
Params params_new(int m, const Rational& lambda, Mode mode = Mode::Certified);

/// Digit string addressing f_{i1} o ... o f_{in}([0,1]). Empty is [0,1].
struct Word {
  std::vector<std::uint8_t> digits;

  Word() = default;
  explicit Word(std::vector<std::uint8_t> d) : digits(std::move(d)) {}

  std::size_t size() const noexcept { return digits.size(); }
  bool empty() const noexcept { return digits.empty(); }
  Word child(std::uint8_t digit) const;

  /// "" for the empty word; digits above 9 use lowercase letters.
  std::string to_string() const;
  static Word parse(std::string_view text);

  friend bool operator==(const Word&, const Word&) = default;
};

struct RatInterval {
  Rational lo;
  Rational hi;

  Rational length() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }

  friend bool operator==(const RatInterval& a, const RatInterval& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
};

/// f_w([0,1]). Throws DigitOutOfRange.
RatInterval basic_interval(const Params& p, const Word& w);

/// The m sub-intervals f_{w i}([0,1]), left to right.
std::vector<RatInterval> children(const Params& p, const Word& w);

/// Empty word, or leading digit >= 1.
bool in_family_A(const Word& w) noexcept;

/// Number of words of the family up to length max_rank:
/// 1 + sum_{n=1}^{max_rank} (m-1) m^(n-1) = m^max_rank.
std::uint64_t family_A_count(int m, int max_rank);

/// Streams the family in length-then-lexicographic order. An optional
/// leading digit restricts the stream to one first-digit subtree (the empty
/// word is emitted only by the unrestricted stream).
class FamilyAStream {
 public:
  FamilyAStream(const Params& p, int max_rank,
                std::optional<std::uint8_t> first_digit = std::nullopt);

  /// Writes the next word and returns true, or returns false when done.
  bool next(Word& out);

 private:
  bool advance();

  int m_;
  int max_rank_;
  std::optional<std::uint8_t> first_digit_;
  bool started_ = false;
  bool done_ = false;
  std::vector<std::uint8_t> current_;
};

std::vector<Word> enumerate_A(const Params& p, int max_rank);

enum class Membership { In, Out, UnresolvedAtDepth };

std::string_view to_string(Membership m) noexcept;

/// Greedy digit extraction on an exact rational in [0,1]. Throws DomainError.
Membership membership(const Params& p, const Rational& x, int max_depth);

/// Whether z = x^2 for some x in the right part of the set (leading digit
/// >= 1). Irrational square roots report UnresolvedAtDepth.
Membership square_membership(const Params& p, const Rational& z, int max_depth);

}  // namespace cantorprod
