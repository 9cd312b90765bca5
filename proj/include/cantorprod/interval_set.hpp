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

#include <cstddef>
#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cantorprod/cantor.hpp"
#include "cantorprod/detail/grid.hpp"
#include "cantorprod/rational.hpp"

namespace cantorprod {

/// A finite union of closed intervals with exact rational endpoints, kept in
/// canonical form: sorted, pairwise disjoint, and never touching (touching
/// neighbours are fused). Values are immutable once built.
///
/// Storage is a common-denominator grid, which keeps sets with tens of
/// millions of components compact; endpoints are materialized as rationals
/// on access.
class IntervalSet {
 public:
  using NativeGrid = detail::Grid<detail::i128>;
  using BigGrid = detail::Grid<mpz_class>;
  using Storage = std::variant<NativeGrid, BigGrid>;

  IntervalSet();

  /// Adopts a grid whose spans are already canonical. Chooses the narrowest
  /// numerator type that holds every value.
  static IntervalSet from_grid(NativeGrid grid, std::uint64_t dropped = 0);
  static IntervalSet from_grid(BigGrid grid, std::uint64_t dropped = 0);

  std::size_t size() const noexcept;
  bool empty() const noexcept { return size() == 0; }
  RatInterval operator[](std::size_t i) const;
  std::vector<RatInterval> intervals() const;

  /// Degenerate (zero-length) inputs discarded while building this set.
  std::uint64_t dropped_degenerate() const noexcept { return dropped_; }

  Rational total_length() const;
  Rational denominator() const;

  bool contains(const Rational& x) const;
  /// Whether the closed interval lies inside one component.
  bool contains(const RatInterval& iv) const;
  /// Whether every point of `other` belongs to this set.
  bool includes(const IntervalSet& other) const;
  /// Whether every component lies inside `iv`.
  bool within(const RatInterval& iv) const;

  IntervalSet scaled(const Rational& factor) const;
  IntervalSet united(const IntervalSet& other) const;

  /// Same grid padded to denominator den() * extra.
  IntervalSet refined(const Integer& extra) const;

  const Storage& storage() const noexcept { return storage_; }
  bool is_native() const noexcept { return storage_.index() == 0; }

  friend bool operator==(const IntervalSet& a, const IntervalSet& b);

 private:
  explicit IntervalSet(Storage s, std::uint64_t dropped);

  Storage storage_;
  std::uint64_t dropped_ = 0;
};

/// Canonical union of arbitrary closed intervals. Degenerate and reversed
/// inputs are dropped and counted.
IntervalSet union_merge(std::span<const RatInterval> items);

Rational total_length(const IntervalSet& s);

/// Throws NonpositiveFactor.
IntervalSet scale(const IntervalSet& s, const Rational& factor);

struct ComponentsReport {
  std::size_t count = 0;
  Rational total_length;
  std::vector<RatInterval> first;
  std::vector<RatInterval> last;  // empty unless count > max_listed
  /// floor(log2(length)) -> number of components.
  std::map<long, std::size_t> length_histogram;
};

ComponentsReport components_report(const IntervalSet& s, std::size_t max_listed);

/// floor(log2(x)) for x > 0, exact.
long floor_log2(const Rational& x);

/// JSON array of ["p/q", "p/q"] pairs.
std::string interval_set_json(const IntervalSet& s);

/// CSV with header lo_decimal,hi_decimal,inexact; endpoints rendered with 17
/// significant digits, lo rounded down and hi rounded up.
void write_interval_set_csv(std::ostream& out, const IntervalSet& s);

}  // namespace cantorprod
