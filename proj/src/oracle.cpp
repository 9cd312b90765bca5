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

#include "cantorprod/oracle.hpp"

#include <algorithm>
#include <string>

#include "cantorprod/detail/grid.hpp"
#include "cantorprod/errors.hpp"

namespace cantorprod {

namespace {

void check_level(int n) {
  if (n < 0) throw Error(ErrorCode::DomainError, "level must be >= 0");
  if (n > 40) throw Error(ErrorCode::ResourceBudgetExceeded, "level too large");
}

// Left endpoints of all level-n basic intervals, in increasing order, as
// integers over den = (m-1) q^n. Built by composing the maps f_i directly:
// f_i(x) = lambda x + i delta, applied from the innermost digit outwards.
std::vector<Integer> level_left_endpoints(const Params& p, int n, Integer& den) {
  den = Integer(p.m() - 1) * power(Integer(p.lambda().get_den()), static_cast<unsigned long>(n));
  std::vector<Integer> out;
  std::vector<int> digits(static_cast<std::size_t>(n), 0);
  const Rational delta = p.step();
  const Rational lam = p.lambda();
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<std::uint64_t>(p.m());
  out.reserve(total);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t r = idx;
    for (int i = n - 1; i >= 0; --i) {
      digits[static_cast<std::size_t>(i)] = static_cast<int>(r % static_cast<std::uint64_t>(p.m()));
      r /= static_cast<std::uint64_t>(p.m());
    }
    Rational x = 0;
    for (int i = n - 1; i >= 0; --i) x = lam * x + Rational(digits[static_cast<std::size_t>(i)]) * delta;
    Rational scaled = x * Rational(den);
    scaled.canonicalize();
    out.push_back(scaled.get_num());
  }
  return out;
}

}  // namespace

RefinementLevel refinement_level(const Params& p, int n) {
  check_level(n);
  std::uint64_t count = 1;
  for (int i = 0; i < n; ++i) count *= static_cast<std::uint64_t>(p.m());
  if (count > kDefaultOracleBudget)
    throw Error(ErrorCode::ResourceBudgetExceeded,
                "level " + std::to_string(n) + " has " + std::to_string(count) + " intervals");
  Integer den;
  const auto left = level_left_endpoints(p, n, den);
  const Rational len = power(p.lambda(), static_cast<unsigned long>(n));
  std::vector<RatInterval> items;
  items.reserve(left.size());
  for (const auto& a : left) {
    Rational lo(a, den);
    lo.canonicalize();
    Rational hi = lo + len;
    items.push_back({lo, hi});
  }
  return {n, union_merge(items)};
}

IntervalSet brute_outer_cover(const Params& p, int n, std::uint64_t budget) {
  check_level(n);
  std::uint64_t count = 1;
  for (int i = 0; i < n; ++i) {
    count *= static_cast<std::uint64_t>(p.m());
    if (count > (std::uint64_t{1} << 31)) break;
  }
  const std::uint64_t pairs = count * (count + 1) / 2;
  if (pairs > budget)
    throw Error(ErrorCode::ResourceBudgetExceeded,
                "level " + std::to_string(n) + " needs " + std::to_string(pairs) +
                    " interval pairs, budget is " + std::to_string(budget));

  Integer den;
  const auto left = level_left_endpoints(p, n, den);
  Rational len_r = power(p.lambda(), static_cast<unsigned long>(n)) * Rational(den);
  len_r.canonicalize();
  const Integer len = len_r.get_num();

  detail::ChunkedUnion<mpz_class> acc(std::size_t{1} << 20);
  for (std::size_t i = 0; i < left.size(); ++i) {
    const Integer hi_i = left[i] + len;
    for (std::size_t j = i; j < left.size(); ++j)
      acc.add(Integer(left[i] * left[j]), Integer(hi_i * (left[j] + len)));
  }
  detail::Grid<mpz_class> grid;
  grid.den = den * den;
  grid.spans = acc.finish();
  return IntervalSet::from_grid(std::move(grid));
}

Rational brute_outer_measure(const Params& p, int n, std::uint64_t budget) {
  return brute_outer_cover(p, n, budget).total_length();
}

SandwichReport sandwich_check(const Params& p, int n, int k, int N, const ApproxOptions& opt,
                              std::uint64_t oracle_budget) {
  SandwichReport r;
  r.level_n = n;
  r.outer = brute_outer_measure(p, n, oracle_budget);
  ApproxOptions o = opt;
  o.materialize = false;
  r.enclosure = full_product_approx(p, k, N, o).enclosure;
  r.lower = r.enclosure.lower;
  r.ok = r.lower <= r.outer;
  return r;
}

std::vector<Rational> right_part_endpoints(const Params& p, int level) {
  check_level(level);
  if (level == 0) return {Rational(1)};
  std::vector<Rational> out;
  for (int d = 1; d < p.m(); ++d) {
    FamilyAStream stream(p, level, static_cast<std::uint8_t>(d));
    Word w;
    while (stream.next(w)) {
      if (static_cast<int>(w.digits.size()) != level) continue;
      const RatInterval iv = basic_interval(p, w);
      out.push_back(iv.lo);
      out.push_back(iv.hi);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool product_absorbed(const IntervalSet& core, const Rational& x, const Rational& y) {
  Rational z = x * y;
  z.canonicalize();
  return core.contains(z);
}

EndpointPairReport endpoint_product_check(const Params& p, int level, int k,
                                          const CoreOptions& opt, std::uint64_t budget) {
  check_level(level);
  if (k < level) throw Error(ErrorCode::DomainError, "rank k must be >= level");
  const auto points = right_part_endpoints(p, level);
  const std::uint64_t pairs =
      static_cast<std::uint64_t>(points.size()) * (points.size() - 1) / 2;
  if (pairs > budget)
    throw Error(ErrorCode::ResourceBudgetExceeded,
                std::to_string(pairs) + " endpoint pairs exceed budget " + std::to_string(budget));

  const IntervalSet core = rank_truncated_core(p, k, opt);
  EndpointPairReport r;
  r.level = level;
  r.rank_k = k;
  r.all_absorbed = true;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      ++r.pairs_tested;
      if (!product_absorbed(core, points[i], points[j])) {
        r.all_absorbed = false;
        if (r.witnesses_of_failure.size() < EndpointPairReport::kMaxWitnesses)
          r.witnesses_of_failure.emplace_back(points[i], points[j]);
      }
    }
  return r;
}

}  // namespace cantorprod
