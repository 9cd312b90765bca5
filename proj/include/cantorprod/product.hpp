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

// Interval structure of the product set K*K and certified enclosures of its
// Lebesgue measure.
//
// For a family word w with children I(0) < ... < I(m-1), the hat set of w is
// the union of the products I(p)*I(q) over p < q (p >= 1 for the empty
// word). Each product of two intervals of positive reals is the interval
// [lo_p*lo_q, hi_p*hi_q]. The union of hat sets over family words of rank at
// most k is the rank-k core; the measure it misses is at most
// 3 (m*lambda)^(k+1) / (1 - m*lambda). The full product set is the union of
// lambda^n copies of the core for n >= 0, plus {0}.

#include <cstdint>
#include <vector>

#include "cantorprod/cantor.hpp"
#include "cantorprod/interval_set.hpp"
#include "cantorprod/rational.hpp"

namespace cantorprod {

/// Default cap on product intervals generated for one core.
inline constexpr std::uint64_t kDefaultProductBudget = 50'000'000;

struct CoreOptions {
  /// Cap on product intervals generated.
  std::uint64_t budget = kDefaultProductBudget;
  /// Intervals buffered before a chunk is sorted and coalesced into a run.
  std::size_t chunk_size = std::size_t{1} << 20;
  unsigned jobs = 1;
  /// Skip subtrees whose bounding box [lo^2, hi^2] already lies inside the
  /// union of lower ranks. Does not change the result.
  bool prune = true;
};

struct CoreStats {
  std::uint64_t generated = 0;        // hat intervals emitted
  std::uint64_t pruned_subtrees = 0;  // words whose subtree was skipped
};

/// Which closed form bounds the measure missed by the rank-k core.
enum class BoundKind {
  Stated,  // 3 (m lambda)^(k+1) / (1 - m lambda)
  Tight,   // 3 ((m-1)/m) (m lambda)^(k+1) / (1 - m lambda); not the published form
};

/// Products I(p)*I(q) for the hat set of w before merging.
/// Throws NotInFamilyA, DigitOutOfRange.
std::vector<RatInterval> hat_intervals(const Params& p, const Word& w);

/// Unpruned number of hat intervals over family words of rank <= k:
/// C(m-1,2) + C(m,2) (m^k - 1). Saturates at UINT64_MAX.
std::uint64_t product_interval_count(int m, int k);

/// Canonical union of the hat sets of all family words of rank <= k.
/// Throws ResourceBudgetExceeded once more than opt.budget product intervals
/// have been generated (or up front, from product_interval_count, when
/// pruning is off).
IntervalSet rank_truncated_core(const Params& p, int k, const CoreOptions& opt = {},
                                CoreStats* stats = nullptr);

Rational error_bound(const Params& p, int k, BoundKind kind = BoundKind::Stated);

/// lambda^(N+1) / (1 - lambda): total measure of all copies beyond depth N.
Rational tail_bound(const Params& p, int N);

/// sum_{n=0}^{N} lambda^n.
Rational scaling_sum(const Params& p, int N);

struct MeasureEnclosure {
  Rational lower;
  Rational upper;
  int rank_k = 0;
  int depth_N = 0;
  bool certified = false;
};

struct ProductApprox {
  IntervalSet set;
  MeasureEnclosure enclosure;
  CoreStats stats;
};

struct ApproxOptions {
  CoreOptions core;
  BoundKind bound = BoundKind::Stated;
  /// When false the union of scaled copies is only measured, never stored,
  /// and ProductApprox::set holds the rank-k core instead.
  bool materialize = true;
};

/// Union of lambda^n * core(k) for n = 0..N with a measure enclosure.
/// Exploratory parameters get upper = 1 and certified = false.
ProductApprox full_product_approx(const Params& p, int k, int N,
                                  const ApproxOptions& opt = {});

/// Union of the copies lambda^n * core for n = 0..N.
IntervalSet scaled_union(const Params& p, const IntervalSet& core, int N);

/// Measure of scaled_union(p, core, N), computed by a streaming merge that
/// keeps only one cursor per copy.
Rational scaled_union_measure(const Params& p, const IntervalSet& core, int N);

/// Enclosure for a given union measure.
MeasureEnclosure make_enclosure(const Params& p, const Rational& lower, int k, int N,
                                BoundKind bound = BoundKind::Stated);

struct Truncation {
  int rank_k = 0;
  int depth_N = 0;
  /// Largest rank whose unpruned interval count fits the budget; always
  /// computable regardless of pruning.
  int fallback_rank = 0;
};

/// Smallest N with tail_bound(N) <= target_err / 1000, then the smallest k
/// with width_bound(k, N) <= target_err. Throws DomainError for
/// target_err <= 0 and ResourceBudgetExceeded when not even rank 0 fits.
Truncation resolve_truncation(const Params& p, const Rational& target_err,
                              std::uint64_t budget, BoundKind bound = BoundKind::Stated);

struct TargetedApprox {
  ProductApprox approx;
  Rational target_err;
  /// False when the budget forced a rank below the one the target needs.
  bool target_met = false;
};

/// Runs full_product_approx at the resolved (k, N). If the budget runs out
/// first, falls back to Truncation::fallback_rank and reports target_met =
/// false.
TargetedApprox approximate_to_target(const Params& p, const Rational& target_err,
                                     const ApproxOptions& opt = {});

/// Width bound of the enclosure at (k, N) before clamping.
Rational width_bound(const Params& p, int k, int N, BoundKind bound = BoundKind::Stated);

struct ChainConditionReport {
  Rational quantity_h;      // lambda^2 + g lambda + delta^2 - g
  Rational quantity_v;      // delta^2 + lambda delta - g
  Rational quantity_claim;  // ((2m-1) lambda - 1) / (m-1)
  bool all_pass = false;
};

ChainConditionReport verify_chain_conditions(const Params& p);

struct Remark2Report {
  RatInterval target;
  bool contained = false;
  Rational core_measure;
  Rational coverage_gap;
  Rational error_bound;
  bool gap_within_bound = false;
};

/// Requires m = 2 and 11/25 < lambda < 1/2. Throws RemarkRangeError.
Remark2Report remark2_check(const Params& p, int k, const CoreOptions& opt = {});

}  // namespace cantorprod
