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

// The measure of K*K as a function of lambda: the doubly truncated values
// phi_n, enclosures over lambda grids, and report-only checks of
// monotonicity and continuity along a grid.

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "cantorprod/product.hpp"
#include "cantorprod/rational.hpp"

namespace cantorprod {

/// Measure of the union of lambda^j * core(n) for j = 0..n, i.e. the lower
/// end of full_product_approx(n, n).
Rational phi_n(const Params& p, int n, const CoreOptions& opt = {});

struct CurvePoint {
  Rational lambda;
  Rational lower;
  Rational upper;
  int rank_k = 0;
  int depth_N = 0;
  bool certified = false;
  /// False when the budget forced a rank below what target_err needs.
  bool target_met = false;
};

/// `steps` equally spaced rationals from start to end inclusive (steps >= 2),
/// or {start} when steps == 1. Throws DomainError.
std::vector<Rational> linear_grid(const Rational& start, const Rational& end, int steps);

/// 64 points on [1/(m+1), 1/m - 1/(64 m)]; for m = 2 this is [1/3, 63/128].
std::vector<Rational> default_grid(int m);

/// One certified point per grid value, in grid order. Throws GridOutOfRange
/// unless every value lies in [1/(m+1), 1/m). Points whose target rank does
/// not fit the budget are returned best-effort with target_met = false.
std::vector<CurvePoint> curve(int m, const std::vector<Rational>& grid,
                              const Rational& target_err, const ApproxOptions& opt = {});

struct MonotonicityReport {
  bool is_consistent_with_increasing = true;
  /// Index pairs (i, j), i < j, with lower_i > upper_j.
  std::vector<std::pair<std::size_t, std::size_t>> violating_pairs;
};

/// Reports certified decreases only; overlapping enclosures say nothing.
/// Throws UnsortedInput unless lambdas are strictly increasing.
MonotonicityReport monotonicity_report(const std::vector<CurvePoint>& points);

/// Uniform bound on |Phi(lambda) - phi_n(lambda)| valid for lambda <= 1/m - alpha:
///   m^(-n-1) / (1 - lambda) + 3 (1 - m alpha)^(n+1) / ((1 - lambda)(1 - m lambda)).
/// Throws AlphaOutOfRange when alpha <= 0 or lambda > 1/m - alpha.
Rational uniform_bound(const Params& p, int n, const Rational& alpha);

struct ContinuityReport {
  bool consistent = true;
  /// Index i where the gap between points i and i + 1 exceeds the allowance.
  std::vector<std::size_t> jumps;
};

/// For adjacent points, the gap between their enclosures (zero when they
/// overlap) must not exceed 2 * max uniform_bound(n, alpha) + both widths.
ContinuityReport continuity_report(int m, const std::vector<CurvePoint>& points, int n,
                                   const Rational& alpha);

/// Columns lambda_decimal, lambda_exact, lower_decimal, upper_decimal,
/// rank_k, depth_N, certified, target_met.
void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& points);

/// Whitespace-separated lambda, lower, upper columns with a '#' header.
void write_curve_plot(std::ostream& out, const std::vector<CurvePoint>& points);

}  // namespace cantorprod
