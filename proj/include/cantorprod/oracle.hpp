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

// Brute-force cross-checks that do not use the hat-set decomposition: outer
// covers of K*K built from all pairs of level-n basic intervals, and exact
// membership of endpoint products in a finite-rank core.

#include <cstdint>
#include <utility>
#include <vector>

#include "cantorprod/cantor.hpp"
#include "cantorprod/interval_set.hpp"
#include "cantorprod/product.hpp"
#include "cantorprod/rational.hpp"

namespace cantorprod {

/// Cap on unordered pairs of level-n basic intervals (and on endpoint pairs).
inline constexpr std::uint64_t kDefaultOracleBudget = 4'000'000;

struct RefinementLevel {
  int level = 0;
  IntervalSet cover;  // union of all m^n level-n basic intervals
};

RefinementLevel refinement_level(const Params& p, int n);

/// Union over unordered pairs (J, J') of level-n basic intervals of
/// [lo*lo', hi*hi']. Covers all of K, including the first branch.
IntervalSet brute_outer_cover(const Params& p, int n,
                              std::uint64_t budget = kDefaultOracleBudget);

/// Measure of brute_outer_cover: an upper bound on the measure of K*K that
/// is nonincreasing in n. Throws ResourceBudgetExceeded.
Rational brute_outer_measure(const Params& p, int n,
                             std::uint64_t budget = kDefaultOracleBudget);

struct SandwichReport {
  int level_n = 0;
  MeasureEnclosure enclosure;
  Rational lower;
  Rational outer;
  bool ok = false;  // lower <= outer
};

SandwichReport sandwich_check(const Params& p, int n, int k, int N,
                              const ApproxOptions& opt = {},
                              std::uint64_t oracle_budget = kDefaultOracleBudget);

struct EndpointPairReport {
  int level = 0;
  int rank_k = 0;
  std::uint64_t pairs_tested = 0;
  bool all_absorbed = false;
  /// First failing pairs (x, y), at most kMaxWitnesses.
  std::vector<std::pair<Rational, Rational>> witnesses_of_failure;
  static constexpr std::size_t kMaxWitnesses = 16;
};

/// Endpoints of level-`level` basic intervals inside the right part of K
/// (first digit >= 1), sorted and distinct.
std::vector<Rational> right_part_endpoints(const Params& p, int level);

/// Whether x*y lies in the core.
bool product_absorbed(const IntervalSet& core, const Rational& x, const Rational& y);

/// Tests x*y against rank_truncated_core(k) for every pair x < y of
/// endpoints at the given level. Equal pairs (the square set) are skipped.
/// Throws DomainError when k < level, ResourceBudgetExceeded when the pair
/// count exceeds the budget.
EndpointPairReport endpoint_product_check(const Params& p, int level, int k,
                                          const CoreOptions& opt = {},
                                          std::uint64_t budget = kDefaultOracleBudget);

}  // namespace cantorprod
