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

#include "cantorprod/cantor.hpp"

#include <limits>
#include <set>

#include "cantorprod/errors.hpp"

namespace cantorprod {

std::string_view to_string(Mode mode) noexcept {
  return mode == Mode::Certified ? "certified" : "exploratory";
}

std::string_view to_string(Membership m) noexcept {
  switch (m) {
    case Membership::In: return "In";
    case Membership::Out: return "Out";
    case Membership::UnresolvedAtDepth: return "UnresolvedAtDepth";
  }
  return "Unknown";
}

Params::Params(int m, Rational lambda, Mode mode)
    : m_(m), lambda_(std::move(lambda)), mode_(mode) {
  gap_ = (Rational(1) - Rational(m_) * lambda_) / Rational(m_ - 1);
  step_ = lambda_ + gap_;
}

bool Params::in_theorem_range() const {
  return lambda_ >= Rational(1, m_ + 1) && lambda_ < Rational(1, m_);
}

Params params_new(int m, const Rational& lambda, Mode mode) {
  if (m < 2) throw Error(ErrorCode::InvalidM, "m must be at least 2");
  if (m > 36) throw Error(ErrorCode::InvalidM, "m above 36 is not supported");
  Rational l(lambda);
  l.canonicalize();
  if (l <= 0 || l >= Rational(1, m))
    throw Error(ErrorCode::InvalidRatio,
                "lambda must satisfy 0 < lambda < 1/m, got " + to_exact_string(l));
  if (mode == Mode::Certified && l < Rational(1, m + 1))
    throw Error(ErrorCode::OutOfTheoremRange,
                "certified mode requires lambda >= 1/(m+1), got " +
                    to_exact_string(l));
  return Params(m, l, mode);
}

Word Word::child(std::uint8_t digit) const {
  Word w(digits);
  w.digits.push_back(digit);
  return w;
}

std::string Word::to_string() const {
  static constexpr char kAlphabet[] = "0123456789abcdefghijklmnopqrstuvwxyz";
  std::string s;
  s.reserve(digits.size());
  for (auto d : digits) {
    if (d >= 36) throw Error(ErrorCode::DigitOutOfRange, "digit too large to print");
    s.push_back(kAlphabet[d]);
  }
  return s;
}

Word Word::parse(std::string_view text) {
  Word w;
  for (char c : text) {
    if (c >= '0' && c <= '9') {
      w.digits.push_back(static_cast<std::uint8_t>(c - '0'));
    } else if (c >= 'a' && c <= 'z') {
      w.digits.push_back(static_cast<std::uint8_t>(c - 'a' + 10));
    } else {
      throw Error(ErrorCode::DigitOutOfRange,
                  "invalid digit in word '" + std::string(text) + "'");
    }
  }
  return w;
}

namespace {

void check_word(const Params& p, const Word& w) {
  for (auto d : w.digits)
    if (d >= p.m())
      throw Error(ErrorCode::DigitOutOfRange,
                  "word '" + w.to_string() + "' has a digit >= m");
}

}  // namespace

RatInterval basic_interval(const Params& p, const Word& w) {
  check_word(p, w);
  // Horner from the innermost map: f_{i1}(... f_{in}(x)).
  Rational lo(0);
  Rational scale(1);
  for (auto d : w.digits) {
    lo += Rational(d) * p.step() * scale;
    scale *= p.lambda();
  }
  return {lo, lo + scale};
}

std::vector<RatInterval> children(const Params& p, const Word& w) {
  RatInterval parent = basic_interval(p, w);
  Rational t = parent.length();
  std::vector<RatInterval> out;
  out.reserve(static_cast<std::size_t>(p.m()));
  for (int i = 0; i < p.m(); ++i) {
    Rational lo = parent.lo + Rational(i) * p.step() * t;
    out.push_back({lo, lo + p.lambda() * t});
  }
  return out;
}

bool in_family_A(const Word& w) noexcept {
  return w.empty() || w.digits.front() >= 1;
}

std::uint64_t family_A_count(int m, int max_rank) {
  std::uint64_t total = 1;
  for (int i = 0; i < max_rank; ++i) {
    if (total > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(m))
      return std::numeric_limits<std::uint64_t>::max();
    total *= static_cast<std::uint64_t>(m);
  }
  return total;
}

FamilyAStream::FamilyAStream(const Params& p, int max_rank,
                             std::optional<std::uint8_t> first_digit)
    : m_(p.m()), max_rank_(max_rank), first_digit_(first_digit) {
  if (first_digit_ && (*first_digit_ < 1 || *first_digit_ >= m_))
    throw Error(ErrorCode::NotInFamilyA, "subtree digit must lie in 1..m-1");
}

bool FamilyAStream::advance() {
  // Odometer over the current length; the leading digit ranges over 1..m-1
  // (or is pinned), the rest over 0..m-1.
  const std::uint8_t lead_lo = first_digit_ ? *first_digit_ : 1;
  const std::uint8_t lead_hi =
      first_digit_ ? *first_digit_ : static_cast<std::uint8_t>(m_ - 1);
  for (std::size_t i = current_.size(); i-- > 0;) {
    const std::uint8_t top = i == 0 ? lead_hi : static_cast<std::uint8_t>(m_ - 1);
    if (current_[i] < top) {
      ++current_[i];
      for (std::size_t j = i + 1; j < current_.size(); ++j) current_[j] = 0;
      return true;
    }
  }
  if (static_cast<int>(current_.size()) >= max_rank_) return false;
  current_.assign(current_.size() + 1, 0);
  current_[0] = lead_lo;
  return true;
}

bool FamilyAStream::next(Word& out) {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    if (!first_digit_) {
      out.digits.clear();
      return true;
    }
  }
  if (!advance()) {
    done_ = true;
    return false;
  }
  out.digits = current_;
  return true;
}

std::vector<Word> enumerate_A(const Params& p, int max_rank) {
  std::vector<Word> out;
  if (max_rank < 0) return out;
  FamilyAStream stream(p, max_rank);
  Word w;
  while (stream.next(w)) out.push_back(w);
  return out;
}

Membership membership(const Params& p, const Rational& x, int max_depth) {
  if (x < 0 || x > 1)
    throw Error(ErrorCode::DomainError, "membership query outside [0,1]");
  std::set<Rational> seen;
  Rational state(x);
  for (int depth = 0; depth < max_depth; ++depth) {
    // 0 and 1 are the fixed points of f_0 and f_{m-1}.
    if (state == 0 || state == 1) return Membership::In;
    if (!seen.insert(state).second) return Membership::In;
    Rational ratio = state / p.step();
    Integer idx;
    mpz_fdiv_q(idx.get_mpz_t(), ratio.get_num_mpz_t(), ratio.get_den_mpz_t());
    if (idx > p.m() - 1) idx = p.m() - 1;
    Rational left = Rational(idx) * p.step();
    if (state > left + p.lambda()) return Membership::Out;
    state = (state - left) / p.lambda();
  }
  return Membership::UnresolvedAtDepth;
}

Membership square_membership(const Params& p, const Rational& z, int max_depth) {
  if (z < 0 || z > 1)
    throw Error(ErrorCode::DomainError, "square query outside [0,1]");
  Rational root;
  if (!exact_sqrt(z, root)) return Membership::UnresolvedAtDepth;
  if (root < p.step()) return Membership::Out;
  return membership(p, root, max_depth);
}

}  // namespace cantorprod
