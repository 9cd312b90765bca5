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

#include "cantorprod/phi_curve.hpp"

#include <algorithm>

#include "cantorprod/errors.hpp"

namespace cantorprod {

Rational phi_n(const Params& p, int n, const CoreOptions& opt) {
  ApproxOptions o;
  o.core = opt;
  o.materialize = false;
  return full_product_approx(p, n, n, o).enclosure.lower;
}

std::vector<Rational> linear_grid(const Rational& start, const Rational& end, int steps) {
  if (steps < 1) throw Error(ErrorCode::DomainError, "grid needs at least one step");
  if (steps == 1) return {start};
  if (!(start < end)) throw Error(ErrorCode::DomainError, "grid start must be below end");
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(steps));
  const Rational h = (end - start) / Rational(steps - 1);
  for (int i = 0; i < steps; ++i) {
    Rational x = start + Rational(i) * h;
    x.canonicalize();
    out.push_back(x);
  }
  return out;
}

std::vector<Rational> default_grid(int m) {
  if (m < 2) throw Error(ErrorCode::InvalidM, "m must be >= 2");
  return linear_grid(Rational(1, m + 1), Rational(1, m) - Rational(1, 64 * m), 64);
}

std::vector<CurvePoint> curve(int m, const std::vector<Rational>& grid,
                              const Rational& target_err, const ApproxOptions& opt) {
  if (m < 2) throw Error(ErrorCode::InvalidM, "m must be >= 2");
  for (const auto& l : grid)
    if (l < Rational(1, m + 1) || !(l < Rational(1, m)))
      throw Error(ErrorCode::GridOutOfRange,
                  "grid value " + to_exact_string(l) + " outside [1/(m+1), 1/m)");

  std::vector<CurvePoint> out;
  out.reserve(grid.size());
  for (const auto& l : grid) {
    const Params p = params_new(m, l, Mode::Certified);
    ApproxOptions o = opt;
    o.materialize = false;
    const TargetedApprox t = approximate_to_target(p, target_err, o);
    const MeasureEnclosure& e = t.approx.enclosure;
    out.push_back({l, e.lower, e.upper, e.rank_k, e.depth_N, e.certified, t.target_met});
  }
  return out;
}

MonotonicityReport monotonicity_report(const std::vector<CurvePoint>& points) {
  for (std::size_t i = 1; i < points.size(); ++i)
    if (!(points[i - 1].lambda < points[i].lambda))
      throw Error(ErrorCode::UnsortedInput, "curve points must be sorted by lambda");
  MonotonicityReport r;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i].lower > points[j].upper) r.violating_pairs.emplace_back(i, j);
  r.is_consistent_with_increasing = r.violating_pairs.empty();
  return r;
}

Rational uniform_bound(const Params& p, int n, const Rational& alpha) {
  if (n < 0) throw Error(ErrorCode::DomainError, "n must be >= 0");
  const Rational m(p.m());
  if (sgn(alpha) <= 0 || p.lambda() > Rational(1, p.m()) - alpha)
    throw Error(ErrorCode::AlphaOutOfRange, "need 0 < alpha <= 1/m - lambda");
  const auto e = static_cast<unsigned long>(n + 1);
  const Rational one_l = Rational(1) - p.lambda();
  Rational b = Rational(1) / (power(m, e) * one_l) +
               Rational(3) * power(Rational(1) - m * alpha, e) /
                   (one_l * (Rational(1) - m * p.lambda()));
  b.canonicalize();
  return b;
}

ContinuityReport continuity_report(int m, const std::vector<CurvePoint>& points, int n,
                                   const Rational& alpha) {
  ContinuityReport r;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const CurvePoint& a = points[i];
    const CurvePoint& b = points[i + 1];
    Rational gap = 0;
    if (a.upper < b.lower) gap = b.lower - a.upper;
    if (b.upper < a.lower) gap = a.lower - b.upper;
    const Rational ua = uniform_bound(params_new(m, a.lambda, Mode::Certified), n, alpha);
    const Rational ub = uniform_bound(params_new(m, b.lambda, Mode::Certified), n, alpha);
    const Rational allowance =
        Rational(2) * std::max(ua, ub) + (a.upper - a.lower) + (b.upper - b.lower);
    if (gap > allowance) r.jumps.push_back(i);
  }
  r.consistent = r.jumps.empty();
  return r;
}

void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& points) {
  out << "lambda_decimal,lambda_exact,lower_decimal,upper_decimal,rank_k,depth_N,certified,"
         "target_met\n";
  for (const auto& pt : points)
    out << to_decimal(pt.lambda, 12, Rounding::Nearest) << ',' << to_exact_string(pt.lambda)
        << ',' << to_decimal(pt.lower, 12, Rounding::TowardZero) << ','
        << to_decimal(pt.upper, 12, Rounding::AwayFromZero) << ',' << pt.rank_k << ','
        << pt.depth_N << ',' << (pt.certified ? "true" : "false") << ','
        << (pt.target_met ? "true" : "false") << '\n';
}

void write_curve_plot(std::ostream& out, const std::vector<CurvePoint>& points) {
  out << "# lambda lower upper\n";
  for (const auto& pt : points)
    out << to_decimal(pt.lambda, 12, Rounding::Nearest) << ' '
        << to_decimal(pt.lower, 12, Rounding::TowardZero) << ' '
        << to_decimal(pt.upper, 12, Rounding::AwayFromZero) << '\n';
}

}  // namespace cantorprod
