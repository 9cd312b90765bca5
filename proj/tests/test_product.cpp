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

#include "cantorprod/errors.hpp"
#include "cantorprod/product.hpp"
#include "support.hpp"

using namespace cantorprod;
using testsupport::rat;

namespace {

Params P(int m, long a, long b) { return params_new(m, rat(a, b)); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::UsageError;
}

}  // namespace

TEST_CASE("hat interval examples") {
  CHECK(hat_intervals(P(2, 1, 3), Word{}).empty());
  CHECK(hat_intervals(P(2, 1, 3), Word::parse("1")) ==
        std::vector<RatInterval>{{rat(16, 27), rat(7, 9)}});
  CHECK(hat_intervals(P(3, 1, 4), Word{}) == std::vector<RatInterval>{{rat(9, 32), rat(5, 8)}});
  CHECK(code_of([] { hat_intervals(P(2, 1, 3), Word::parse("01")); }) ==
        ErrorCode::NotInFamilyA);
  CHECK(hat_intervals(P(4, 1, 5), Word::parse("2")).size() == 6);
  CHECK(hat_intervals(P(4, 1, 5), Word{}).size() == 3);
}

TEST_CASE("core examples") {
  const auto c2 = rank_truncated_core(P(2, 1, 3), 2);
  CHECK(c2.intervals() == std::vector<RatInterval>{{rat(40, 81), rat(133, 243)},
                                                   {rat(16, 27), rat(7, 9)},
                                                   {rat(208, 243), rat(25, 27)}});
  CHECK(c2.total_length() == rat(75, 243));
  CHECK(rank_truncated_core(P(2, 1, 3), 0).empty());
  CHECK(rank_truncated_core(P(3, 1, 4), 0).intervals() ==
        std::vector<RatInterval>{{rat(9, 32), rat(5, 8)}});
}

TEST_CASE("bound examples") {
  CHECK(error_bound(P(2, 1, 3), 2) == rat(8, 3));
  CHECK(error_bound(P(2, 1, 3), 24) == Rational(9) * power(rat(2, 3), 25));
  CHECK(error_bound(P(3, 1, 4), 0) == 9);
  CHECK(error_bound(P(2, 1, 3), 2, BoundKind::Tight) == rat(4, 3));
  CHECK(tail_bound(P(2, 1, 3), 12) == rat(3, 2) / power(Rational(3), 13));
  CHECK(tail_bound(P(2, 1, 3), 0) == rat(1, 2));
  CHECK(tail_bound(P(3, 1, 4), 1) == rat(1, 12));
  CHECK(scaling_sum(P(2, 1, 3), 2) == rat(13, 9));
}

TEST_CASE("full approximation examples") {
  auto a = full_product_approx(P(2, 1, 3), 1, 0);
  CHECK(a.set.intervals() == std::vector<RatInterval>{{rat(16, 27), rat(7, 9)}});
  CHECK(a.enclosure.lower == rat(5, 27));
  CHECK(a.enclosure.upper == 1);
  CHECK(a.enclosure.certified);
  a = full_product_approx(P(2, 2, 5), 0, 0);
  CHECK(a.set.empty());
  CHECK(a.enclosure.lower == 0);
}

TEST_CASE("exploratory runs report lower bounds only") {
  const Params p = params_new(2, rat(3, 10), Mode::Exploratory);
  const auto a = full_product_approx(p, 6, 4);
  CHECK_FALSE(a.enclosure.certified);
  CHECK(a.enclosure.upper == 1);
  CHECK(sgn(a.enclosure.lower) > 0);
}

TEST_CASE("chain conditions") {
  auto r = verify_chain_conditions(P(2, 1, 3));
  CHECK(r.quantity_h == rat(1, 3));
  CHECK(r.quantity_v == rat(1, 3));
  CHECK(r.quantity_claim == 0);
  CHECK(r.all_pass);
  r = verify_chain_conditions(params_new(2, rat(3, 10), Mode::Exploratory));
  CHECK(r.quantity_claim == rat(-1, 10));
  CHECK_FALSE(r.all_pass);
  CHECK(verify_chain_conditions(P(5, 1, 6)).all_pass);
}

TEST_CASE("property: chain quantities match their formulas") {
  testsupport::Gen g(41);
  for (int i = 0; i < 300; ++i) {
    const int m = g.uniform(2, 7);
    const Params p = params_new(m, g.rational_in(rat(1, 100), rat(1, m), 300), Mode::Exploratory);
    const Rational l = p.lambda(), gap = p.gap(), d = p.step();
    const auto r = verify_chain_conditions(p);
    CHECK(r.quantity_h == l * l + gap * l + d * d - gap);
    CHECK(r.quantity_v == d * d + l * d - gap);
    CHECK(r.quantity_claim == (Rational(2 * m - 1) * l - 1) / Rational(m - 1));
    CHECK(r.all_pass == (sgn(r.quantity_h) >= 0 && sgn(r.quantity_v) >= 0 &&
                         sgn(r.quantity_claim) >= 0));
    if (p.in_theorem_range()) CHECK(r.all_pass);
  }
}

TEST_CASE("coverage of [(1-lambda)^2, 1] at m = 2") {
  const Params p = P(2, 9, 20);
  auto r = remark2_check(p, 1);
  CHECK(r.target == RatInterval{rat(121, 400), rat(1)});
  CHECK(r.contained);
  r = remark2_check(p, 16);
  CHECK(r.contained);
  CHECK(r.coverage_gap == r.target.length() - r.core_measure);
  CHECK(r.coverage_gap <= error_bound(p, 16));
  CHECK(r.gap_within_bound);
  CHECK(code_of([] { remark2_check(P(2, 2, 5), 1); }) == ErrorCode::RemarkRangeError);
  CHECK(code_of([] { remark2_check(P(3, 2, 7), 1); }) == ErrorCode::RemarkRangeError);
  CHECK(code_of([] { remark2_check(P(2, 11, 25), 1); }) == ErrorCode::RemarkRangeError);
}

TEST_CASE("budget") {
  CHECK(product_interval_count(2, 0) == 0);
  CHECK(product_interval_count(3, 0) == 1);
  CHECK(product_interval_count(2, 3) == 7);
  CHECK(product_interval_count(3, 2) == 1 + 3 * 8);
  CoreOptions o;
  o.budget = 100;
  o.prune = false;
  CHECK(code_of([&] { rank_truncated_core(P(2, 1, 3), 10, o); }) ==
        ErrorCode::ResourceBudgetExceeded);
  o.prune = true;
  CHECK(code_of([&] { rank_truncated_core(P(2, 1, 3), 10, o); }) ==
        ErrorCode::ResourceBudgetExceeded);
  CoreStats st;
  o.budget = 1000;
  rank_truncated_core(P(2, 9, 20), 200, o, &st);
  CHECK(st.generated <= 1000);
  CHECK(st.pruned_subtrees > 0);
}

TEST_CASE("resolved truncation meets the target") {
  const Params p = P(2, 1, 3);
  const auto t = resolve_truncation(p, rat(1, 1000), kDefaultProductBudget);
  CHECK(tail_bound(p, t.depth_N) <= rat(1, 1000000));
  CHECK(tail_bound(p, t.depth_N - 1) > rat(1, 1000000));
  CHECK(width_bound(p, t.rank_k, t.depth_N) <= rat(1, 1000));
  CHECK(width_bound(p, t.rank_k - 1, t.depth_N) > rat(1, 1000));
  CHECK(product_interval_count(2, t.fallback_rank) <= kDefaultProductBudget);
  CHECK(product_interval_count(2, t.fallback_rank + 1) > kDefaultProductBudget);
  CHECK(code_of([&] { resolve_truncation(p, rat(0), 10); }) == ErrorCode::DomainError);

  ApproxOptions o;
  o.materialize = false;
  o.core.budget = 2000;
  const auto ta = approximate_to_target(p, rat(1, 1000), o);
  CHECK_FALSE(ta.target_met);
  CHECK(ta.approx.enclosure.rank_k < t.rank_k);
  const auto tb = approximate_to_target(p, rat(1, 10));
  CHECK(tb.target_met);
  CHECK(tb.approx.enclosure.upper - tb.approx.enclosure.lower <= rat(1, 10));
}

TEST_CASE("property: engine matches the literal construction") {
  testsupport::Gen g(42);
  for (int i = 0; i < 60; ++i) {
    const Params p = g.certified(4, 30);
    const int k = g.uniform(0, p.m() == 2 ? 7 : (p.m() == 3 ? 4 : 3));
    CAPTURE(p.m());
    CAPTURE(to_exact_string(p.lambda()));
    CAPTURE(k);
    const auto items = testsupport::naive_core_items(p, k);
    const auto expect = testsupport::sweep_components(items);
    CoreOptions plain;
    plain.prune = false;
    CoreOptions tiny;
    tiny.chunk_size = 3;
    CoreOptions par;
    par.jobs = 3;
    par.chunk_size = 5;
    const auto a = rank_truncated_core(p, k);
    CHECK(a.intervals() == expect);
    CHECK(rank_truncated_core(p, k, plain) == a);
    CHECK(rank_truncated_core(p, k, tiny) == a);
    CHECK(rank_truncated_core(p, k, par) == a);
    // Route through the generic merge as well.
    std::vector<RatInterval> via;
    for (const auto& w : enumerate_A(p, k)) {
      auto h = hat_intervals(p, w);
      via.insert(via.end(), h.begin(), h.end());
    }
    CHECK(union_merge(via) == a);
  }
}

TEST_CASE("parallel schedules give the identical set") {
  const Params p = P(2, 1, 3);
  CoreOptions one;
  CoreOptions four;
  four.jobs = 4;
  four.chunk_size = 1000;
  CHECK(rank_truncated_core(p, 14, one) == rank_truncated_core(p, 14, four));
  const Params q = P(3, 7, 24);
  CHECK(rank_truncated_core(q, 8, one) == rank_truncated_core(q, 8, four));
}

TEST_CASE("property: per-word hat bounds") {
  testsupport::Gen g(43);
  for (int i = 0; i < 40; ++i) {
    const Params p = g.certified(4, 30);
    const int maxr = p.m() == 2 ? 8 : 4;
    const Rational pairs(p.m() * (p.m() - 1) / 2);
    for (const auto& w : enumerate_A(p, maxr)) {
      const auto h = hat_intervals(p, w);
      const Rational cap = Rational(3) * power(p.lambda(), w.size());
      Rational raw = 0;
      for (const auto& iv : h) {
        CHECK(sgn(iv.lo) > 0);
        CHECK(iv.hi <= 1);
        CHECK(iv.lo < iv.hi);
        raw += iv.length();
      }
      CHECK(raw <= cap * pairs);
      CHECK(union_merge(h).total_length() <= cap);
    }
  }
}

TEST_CASE("property: cores grow with k, lower bounds with k and N") {
  testsupport::Gen g(44);
  for (int i = 0; i < 25; ++i) {
    const Params p = g.certified(3, 30);
    const int top = p.m() == 2 ? 10 : 6;
    IntervalSet prev = rank_truncated_core(p, 0);
    for (int k = 1; k <= top; ++k) {
      const IntervalSet cur = rank_truncated_core(p, k);
      CHECK(cur.includes(prev));
      prev = cur;
    }
    Rational last = -1;
    for (int N = 0; N <= 6; ++N) {
      const auto e = full_product_approx(p, top, N).enclosure;
      CHECK(last <= e.lower);
      CHECK(e.lower <= e.upper);
      CHECK(e.upper <= 1);
      last = e.lower;
    }
  }
}

TEST_CASE("property: measure of scaled copies is exact and streaming agrees") {
  testsupport::Gen g(45);
  for (int i = 0; i < 30; ++i) {
    const Params p = g.certified(3, 40);
    const int k = g.uniform(0, p.m() == 2 ? 9 : 5);
    const int N = g.uniform(0, 8);
    const auto core = rank_truncated_core(p, k);
    const Rational f = power(p.lambda(), static_cast<unsigned long>(g.uniform(1, 5)));
    CHECK(core.scaled(f).total_length() == f * core.total_length());
    const auto u = scaled_union(p, core, N);
    CHECK(scaled_union_measure(p, core, N) == u.total_length());
    std::vector<RatInterval> copies;
    for (int n = 0; n <= N; ++n)
      for (const auto& iv : core.scaled(power(p.lambda(), static_cast<unsigned long>(n))).intervals())
        copies.push_back(iv);
    CHECK(u.total_length() == testsupport::sweep_measure(copies));
    ApproxOptions lean;
    lean.materialize = false;
    CHECK(full_product_approx(p, k, N, lean).enclosure.lower ==
          full_product_approx(p, k, N).enclosure.lower);
  }
}

TEST_CASE("property: copies are disjoint when lambda < delta^2") {
  testsupport::Gen g(46);
  int tested = 0;
  while (tested < 20) {
    const Params p = g.certified(2, 200);
    if (!(p.lambda() < p.step() * p.step())) continue;
    ++tested;
    const auto core = rank_truncated_core(p, g.uniform(1, 9));
    const int N = g.uniform(1, 6);
    Rational sum = 0;
    for (int n = 0; n <= N; ++n) sum += power(p.lambda(), static_cast<unsigned long>(n));
    CHECK(scaled_union(p, core, N).total_length() == sum * core.total_length());
  }
}

TEST_CASE("deep ranks stay cheap once the core fills an interval") {
  CoreStats st;
  const auto c = rank_truncated_core(P(2, 63, 128), 400, {}, &st);
  CHECK(c.size() == 1);
  CHECK(st.generated < 10000);
}
