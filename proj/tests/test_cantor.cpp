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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cantorprod/cantor.hpp"
#include "cantorprod/errors.hpp"
#include "support.hpp"

using namespace cantorprod;
using testsupport::rat;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::UsageError;
}

Word word(const char* s) { return Word::parse(s); }

}  // namespace

TEST_CASE("params: gap and step") {
  const Params a = params_new(2, rat(1, 3));
  CHECK(a.gap() == rat(1, 3));
  CHECK(a.step() == rat(2, 3));
  const Params b = params_new(5, rat(1, 6));
  CHECK(b.gap() == rat(1, 24));
  CHECK(b.step() == rat(5, 24));
}

TEST_CASE("params: validation") {
  CHECK(code_of([] { params_new(2, rat(3, 10)); }) == ErrorCode::OutOfTheoremRange);
  CHECK(code_of([] { params_new(2, rat(1, 2)); }) == ErrorCode::InvalidRatio);
  CHECK(code_of([] { params_new(2, rat(0)); }) == ErrorCode::InvalidRatio);
  CHECK(code_of([] { params_new(2, rat(-1, 5)); }) == ErrorCode::InvalidRatio);
  CHECK(code_of([] { params_new(1, rat(1, 3)); }) == ErrorCode::InvalidM);
  const Params e = params_new(2, rat(3, 10), Mode::Exploratory);
  CHECK_FALSE(e.certified());
  CHECK_FALSE(e.in_theorem_range());
  CHECK(e.gap() == rat(2, 5));
}

TEST_CASE("property: step identities") {
  testsupport::Gen g(21);
  for (int i = 0; i < 300; ++i) {
    const int m = g.uniform(2, 9);
    const Rational l = g.rational_in(rat(1, 1000), rat(1, m), 500);
    const Params p = params_new(m, l, Mode::Exploratory);
    CHECK(Rational(m) * p.lambda() + Rational(m - 1) * p.gap() == 1);
    CHECK(p.step() == p.lambda() + p.gap());
    CHECK(sgn(p.gap()) > 0);
    CHECK(p.in_theorem_range() == (rat(1, m + 1) <= l));
  }
}

TEST_CASE("basic intervals") {
  const Params p = params_new(2, rat(1, 3));
  CHECK(basic_interval(p, Word{}) == RatInterval{rat(0), rat(1)});
  CHECK(basic_interval(p, word("1")) == RatInterval{rat(2, 3), rat(1)});
  CHECK(basic_interval(p, word("11")) == RatInterval{rat(8, 9), rat(1)});
  CHECK(code_of([&] { basic_interval(p, word("12")); }) == ErrorCode::DigitOutOfRange);
}

TEST_CASE("children") {
  const Params p = params_new(2, rat(1, 3));
  auto c = children(p, word("1"));
  REQUIRE(c.size() == 2);
  CHECK(c[0] == RatInterval{rat(2, 3), rat(7, 9)});
  CHECK(c[1] == RatInterval{rat(8, 9), rat(1)});

  const Params q = params_new(3, rat(1, 4));
  c = children(q, Word{});
  REQUIRE(c.size() == 3);
  CHECK(c[0] == RatInterval{rat(0), rat(1, 4)});
  CHECK(c[1] == RatInterval{rat(3, 8), rat(5, 8)});
  CHECK(c[2] == RatInterval{rat(3, 4), rat(1)});
}

TEST_CASE("property: basic intervals match literal composition and nest") {
  testsupport::Gen g(22);
  for (int i = 0; i < 200; ++i) {
    const Params p = g.certified(5, 60);
    const int n = g.uniform(0, 6);
    std::vector<int> d;
    Word w;
    for (int j = 0; j < n; ++j) {
      d.push_back(g.uniform(0, p.m() - 1));
      w.digits.push_back(static_cast<std::uint8_t>(d.back()));
    }
    const RatInterval iv = basic_interval(p, w);
    CHECK(iv == testsupport::compose(p, d));
    CHECK(iv.length() == power(p.lambda(), static_cast<unsigned long>(n)));

    const auto kids = children(p, w);
    REQUIRE(kids.size() == static_cast<std::size_t>(p.m()));
    const Rational gap = p.gap() * power(p.lambda(), static_cast<unsigned long>(n));
    for (int c = 0; c < p.m(); ++c) {
      CHECK(kids[static_cast<std::size_t>(c)] ==
            basic_interval(p, w.child(static_cast<std::uint8_t>(c))));
      if (c > 0)
        CHECK(kids[static_cast<std::size_t>(c)].lo - kids[static_cast<std::size_t>(c - 1)].hi ==
              gap);
    }
    CHECK(kids.front().lo == iv.lo);
    CHECK(kids.back().hi == iv.hi);
  }
}

TEST_CASE("word text") {
  CHECK(Word{}.to_string().empty());
  CHECK(word("101").to_string() == "101");
  CHECK(word("a9").digits == std::vector<std::uint8_t>{10, 9});
  CHECK(in_family_A(Word{}));
  CHECK(in_family_A(word("10")));
  CHECK_FALSE(in_family_A(word("01")));
}

TEST_CASE("enumerate family words") {
  const Params p = params_new(2, rat(1, 3));
  std::vector<std::string> got;
  for (const auto& w : enumerate_A(p, 3)) got.push_back(w.to_string());
  CHECK(got == std::vector<std::string>{"", "1", "10", "11", "100", "101", "110", "111"});

  const Params q = params_new(3, rat(1, 4));
  got.clear();
  for (const auto& w : enumerate_A(q, 1)) got.push_back(w.to_string());
  CHECK(got == std::vector<std::string>{"", "1", "2"});
  CHECK(enumerate_A(q, 0).size() == 1);
}

TEST_CASE("property: family counts match the closed form") {
  for (int m = 2; m <= 5; ++m)
    for (int k = 0; k <= 8; ++k) {
      const Params p = params_new(m, rat(1, m + 1));
      std::uint64_t closed = 1, pow = 1;
      for (int n = 1; n <= k; ++n) {
        closed += static_cast<std::uint64_t>(m - 1) * pow;
        pow *= static_cast<std::uint64_t>(m);
      }
      CAPTURE(m);
      CAPTURE(k);
      CHECK(family_A_count(m, k) == closed);
      if (closed <= 100000) {
        FamilyAStream s(p, k);
        Word w, prev;
        std::uint64_t seen = 0;
        bool ordered = true;
        while (s.next(w)) {
          if (seen > 0)
            ordered = ordered && (prev.size() < w.size() ||
                                  (prev.size() == w.size() && prev.digits < w.digits));
          CHECK(in_family_A(w));
          prev = w;
          ++seen;
        }
        CHECK(ordered);
        CHECK(seen == closed);
      }
    }
}

TEST_CASE("stream partitions by first digit") {
  const Params p = params_new(3, rat(2, 7));
  std::uint64_t total = 0;
  for (std::uint8_t d = 1; d < 3; ++d) {
    FamilyAStream s(p, 4, d);
    Word w;
    while (s.next(w)) {
      CHECK(w.digits.front() == d);
      ++total;
    }
  }
  CHECK(total + 1 == family_A_count(3, 4));
}

TEST_CASE("membership examples") {
  const Params p = params_new(2, rat(1, 3));
  CHECK(membership(p, rat(1, 2), 64) == Membership::Out);
  CHECK(membership(p, rat(1), 64) == Membership::In);
  CHECK(membership(p, rat(1, 4), 64) == Membership::In);
  CHECK(membership(p, rat(0), 64) == Membership::In);
  CHECK(code_of([&] { membership(p, rat(3, 2), 4); }) == ErrorCode::DomainError);
}

TEST_CASE("membership: digits of 1/4 alternate") {
  // Inverting the maps sends 1/4 -> 3/4 -> 1/4, a period-two orbit.
  const Params p = params_new(2, rat(1, 3));
  Rational x = rat(1, 4);
  x = x * 3;
  CHECK(x == rat(3, 4));
  x = (x - rat(2, 3)) * 3;
  CHECK(x == rat(1, 4));
  CHECK(membership(p, rat(3, 4), 8) == Membership::In);
}

TEST_CASE("property: endpoints of basic intervals are members") {
  testsupport::Gen g(23);
  for (int i = 0; i < 300; ++i) {
    const Params p = g.certified(5, 40);
    const int n = g.uniform(0, 7);
    Word w;
    for (int j = 0; j < n; ++j) w.digits.push_back(static_cast<std::uint8_t>(g.uniform(0, p.m() - 1)));
    const RatInterval iv = basic_interval(p, w);
    CHECK(membership(p, iv.lo, n + 64) == Membership::In);
    CHECK(membership(p, iv.hi, n + 64) == Membership::In);
  }
}

TEST_CASE("property: gap midpoints are outside") {
  testsupport::Gen g(24);
  for (int i = 0; i < 300; ++i) {
    const Params p = g.certified(5, 40);
    const int n = g.uniform(0, 6);
    Word w;
    for (int j = 0; j < n; ++j) w.digits.push_back(static_cast<std::uint8_t>(g.uniform(0, p.m() - 1)));
    const auto kids = children(p, w);
    const int c = g.uniform(1, p.m() - 1);
    const Rational mid = (kids[static_cast<std::size_t>(c - 1)].hi + kids[static_cast<std::size_t>(c)].lo) / 2;
    CHECK(membership(p, mid, n + 8) == Membership::Out);
  }
}

TEST_CASE("square membership") {
  const Params p = params_new(2, rat(1, 3));
  CHECK(square_membership(p, rat(4, 9), 32) == Membership::In);   // (2/3)^2
  CHECK(square_membership(p, rat(1, 4), 32) == Membership::Out);  // 1/2 in a gap
  CHECK(square_membership(p, rat(1, 2), 32) == Membership::UnresolvedAtDepth);
  // 1/16 = (1/4)^2 but 1/4 lies in the first branch, outside the right part.
  CHECK(square_membership(p, rat(1, 16), 32) == Membership::Out);
}
