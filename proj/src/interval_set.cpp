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

#include "cantorprod/interval_set.hpp"

#include <algorithm>

#include "json.hpp"

#include "cantorprod/errors.hpp"

namespace cantorprod {

using detail::i128;
using NativeGrid = IntervalSet::NativeGrid;
using BigGrid = IntervalSet::BigGrid;

namespace {

using Storage = IntervalSet::Storage;

BigGrid to_big(const Storage& s) {
  if (const auto* n = std::get_if<NativeGrid>(&s)) return detail::widen(*n);
  return std::get<BigGrid>(s);
}

mpz_class storage_den(const Storage& s) {
  return std::visit([](const auto& g) { return detail::as_mpz(g.den); }, s);
}

std::size_t storage_bits(const Storage& s) {
  return std::visit([](const auto& g) { return detail::max_bits(g); }, s);
}

// Multiplies numerators by num and the denominator by den, promoting to GMP
// integers if the native representation could overflow.
Storage rescale_storage(const Storage& s, const mpz_class& num,
                        const mpz_class& den) {
  if (num == 1 && den == 1) return s;
  const std::size_t need =
      storage_bits(s) + std::max(detail::bit_length(num), detail::bit_length(den));
  if (const auto* n = std::get_if<NativeGrid>(&s);
      n != nullptr && need <= detail::kNativeBits) {
    return detail::rescale(*n, detail::to_i128(num), detail::to_i128(den));
  }
  return detail::rescale(to_big(s), num, den);
}

// Both storages brought to the least common denominator and the same
// numerator type.
std::pair<Storage, Storage> common_grid(const Storage& a, const Storage& b) {
  mpz_class da = storage_den(a);
  mpz_class db = storage_den(b);
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), da.get_mpz_t(), db.get_mpz_t());
  mpz_class fa = l / da;
  mpz_class fb = l / db;
  Storage ra = rescale_storage(a, fa, fa);
  Storage rb = rescale_storage(b, fb, fb);
  if (ra.index() != rb.index()) {
    ra = to_big(ra);
    rb = to_big(rb);
  }
  return {std::move(ra), std::move(rb)};
}

template <class Int>
RatInterval span_at(const detail::Grid<Int>& g, std::size_t i) {
  Rational lo(detail::as_mpz(g.spans[i].lo), detail::as_mpz(g.den));
  Rational hi(detail::as_mpz(g.spans[i].hi), detail::as_mpz(g.den));
  lo.canonicalize();
  hi.canonicalize();
  return {lo, hi};
}

// Index of the last span whose lo <= x, or npos.
template <class Int>
std::size_t locate(const detail::Grid<Int>& g, const Rational& x) {
  const mpz_class a = x.get_num();
  const mpz_class b = x.get_den();
  const mpz_class aD = a * detail::as_mpz(g.den);
  auto it = std::partition_point(g.spans.begin(), g.spans.end(),
                                 [&](const detail::Span<Int>& s) {
                                   return detail::as_mpz(s.lo) * b <= aD;
                                 });
  if (it == g.spans.begin()) return static_cast<std::size_t>(-1);
  return static_cast<std::size_t>(it - g.spans.begin()) - 1;
}

template <class Int>
bool at_most(const Int& num, const mpz_class& den, const Rational& x) {
  return detail::as_mpz(num) * x.get_den() <= x.get_num() * den;
}

template <class Int>
bool at_least(const Int& num, const mpz_class& den, const Rational& x) {
  return detail::as_mpz(num) * x.get_den() >= x.get_num() * den;
}

template <class Int>
long floor_log2_ratio(const Int& a, const Int& d) {
  const long la = static_cast<long>(detail::bit_length(a));
  const long ld = static_cast<long>(detail::bit_length(d));
  long e = la - ld;
  bool ge;
  if (e >= 0) {
    Int shifted = d << static_cast<unsigned>(e);
    ge = !(a < shifted);
  } else {
    Int shifted = a << static_cast<unsigned>(-e);
    ge = !(shifted < d);
  }
  return ge ? e : e - 1;
}

}  // namespace

IntervalSet::IntervalSet() : storage_(NativeGrid{1, {}}) {}

IntervalSet::IntervalSet(Storage s, std::uint64_t dropped)
    : storage_(std::move(s)), dropped_(dropped) {}

IntervalSet IntervalSet::from_grid(NativeGrid grid, std::uint64_t dropped) {
  return IntervalSet(Storage(std::move(grid)), dropped);
}

IntervalSet IntervalSet::from_grid(BigGrid grid, std::uint64_t dropped) {
  if (detail::max_bits(grid) <= detail::kNativeBits)
    return IntervalSet(Storage(detail::narrow(grid)), dropped);
  return IntervalSet(Storage(std::move(grid)), dropped);
}

std::size_t IntervalSet::size() const noexcept {
  return std::visit([](const auto& g) { return g.spans.size(); }, storage_);
}

RatInterval IntervalSet::operator[](std::size_t i) const {
  return std::visit([i](const auto& g) { return span_at(g, i); }, storage_);
}

std::vector<RatInterval> IntervalSet::intervals() const {
  std::vector<RatInterval> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back((*this)[i]);
  return out;
}

Rational IntervalSet::total_length() const {
  return std::visit(
      [](const auto& g) {
        Rational r(detail::as_mpz(detail::total_numerator(g)), detail::as_mpz(g.den));
        r.canonicalize();
        return r;
      },
      storage_);
}

Rational IntervalSet::denominator() const { return Rational(storage_den(storage_)); }

bool IntervalSet::contains(const Rational& x) const {
  return std::visit(
      [&x](const auto& g) {
        std::size_t i = locate(g, x);
        if (i == static_cast<std::size_t>(-1)) return false;
        return at_least(g.spans[i].hi, detail::as_mpz(g.den), x);
      },
      storage_);
}

bool IntervalSet::contains(const RatInterval& iv) const {
  if (iv.hi < iv.lo) return false;
  return std::visit(
      [&iv](const auto& g) {
        std::size_t i = locate(g, iv.lo);
        if (i == static_cast<std::size_t>(-1)) return false;
        return at_least(g.spans[i].hi, detail::as_mpz(g.den), iv.hi);
      },
      storage_);
}

bool IntervalSet::includes(const IntervalSet& other) const {
  if (other.empty()) return true;
  auto [mine, theirs] = common_grid(storage_, other.storage_);
  return std::visit(
      [](const auto& a, const auto& b) -> bool {
        if constexpr (!std::is_same_v<std::decay_t<decltype(a)>,
                                      std::decay_t<decltype(b)>>) {
          return false;  // common_grid never mixes types
        } else {
          std::size_t i = 0;
          for (const auto& s : b.spans) {
            while (i < a.spans.size() && a.spans[i].hi < s.lo) ++i;
            if (i == a.spans.size()) return false;
            if (s.lo < a.spans[i].lo || a.spans[i].hi < s.hi) return false;
          }
          return true;
        }
      },
      mine, theirs);
}

bool IntervalSet::within(const RatInterval& iv) const {
  return std::visit(
      [&iv](const auto& g) {
        if (g.spans.empty()) return true;
        const mpz_class den = detail::as_mpz(g.den);
        return at_least(g.spans.front().lo, den, iv.lo) &&
               at_most(g.spans.back().hi, den, iv.hi);
      },
      storage_);
}

IntervalSet IntervalSet::scaled(const Rational& factor) const {
  if (factor <= 0) throw Error(ErrorCode::NonpositiveFactor, "scale factor must be positive");
  Rational f(factor);
  f.canonicalize();
  return IntervalSet(rescale_storage(storage_, f.get_num(), f.get_den()), dropped_);
}

IntervalSet IntervalSet::united(const IntervalSet& other) const {
  auto [a, b] = common_grid(storage_, other.storage_);
  std::uint64_t dropped = dropped_ + other.dropped_;
  return std::visit(
      [dropped](auto& ga, auto& gb) -> IntervalSet {
        using GA = std::decay_t<decltype(ga)>;
        using GB = std::decay_t<decltype(gb)>;
        if constexpr (!std::is_same_v<GA, GB>) {
          return IntervalSet();
        } else {
          GA out;
          out.den = ga.den;
          std::vector<decltype(ga.spans)> runs;
          runs.push_back(std::move(ga.spans));
          runs.push_back(std::move(gb.spans));
          out.spans = detail::kway_merge(std::move(runs));
          return IntervalSet::from_grid(std::move(out), dropped);
        }
      },
      a, b);
}

IntervalSet IntervalSet::refined(const Integer& extra) const {
  return IntervalSet(rescale_storage(storage_, extra, extra), dropped_);
}

bool operator==(const IntervalSet& a, const IntervalSet& b) {
  if (a.size() != b.size()) return false;
  auto [ga, gb] = common_grid(a.storage_, b.storage_);
  return std::visit(
      [](const auto& x, const auto& y) -> bool {
        if constexpr (!std::is_same_v<std::decay_t<decltype(x)>,
                                      std::decay_t<decltype(y)>>) {
          return false;
        } else {
          for (std::size_t i = 0; i < x.spans.size(); ++i)
            if (x.spans[i].lo != y.spans[i].lo || x.spans[i].hi != y.spans[i].hi)
              return false;
          return true;
        }
      },
      ga, gb);
}

IntervalSet union_merge(std::span<const RatInterval> items) {
  std::uint64_t dropped = 0;
  mpz_class den = 1;
  std::vector<const RatInterval*> kept;
  kept.reserve(items.size());
  for (const auto& iv : items) {
    if (!(iv.lo < iv.hi)) {
      ++dropped;
      continue;
    }
    kept.push_back(&iv);
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), iv.lo.get_den_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), iv.hi.get_den_mpz_t());
  }
  BigGrid g;
  g.den = den;
  g.spans.reserve(kept.size());
  for (const auto* iv : kept) {
    mpz_class lo = iv->lo.get_num() * (den / iv->lo.get_den());
    mpz_class hi = iv->hi.get_num() * (den / iv->hi.get_den());
    g.spans.push_back({std::move(lo), std::move(hi)});
  }
  std::size_t bits = detail::bit_length(den);
  for (const auto& s : g.spans)
    bits = std::max({bits, detail::bit_length(s.lo), detail::bit_length(s.hi)});
  if (bits <= detail::kNativeBits) {
    NativeGrid n = detail::narrow(g);
    detail::sort_and_coalesce(n.spans);
    return IntervalSet::from_grid(std::move(n), dropped);
  }
  detail::sort_and_coalesce(g.spans);
  return IntervalSet::from_grid(std::move(g), dropped);
}

Rational total_length(const IntervalSet& s) { return s.total_length(); }

IntervalSet scale(const IntervalSet& s, const Rational& factor) {
  return s.scaled(factor);
}

long floor_log2(const Rational& x) {
  if (x <= 0) throw Error(ErrorCode::DomainError, "floor_log2 of a nonpositive value");
  return floor_log2_ratio(mpz_class(x.get_num()), mpz_class(x.get_den()));
}

ComponentsReport components_report(const IntervalSet& s, std::size_t max_listed) {
  ComponentsReport r;
  r.count = s.size();
  r.total_length = s.total_length();
  const std::size_t head = std::min(max_listed, r.count);
  for (std::size_t i = 0; i < head; ++i) r.first.push_back(s[i]);
  if (r.count > max_listed)
    for (std::size_t i = r.count - std::min(max_listed, r.count); i < r.count; ++i)
      r.last.push_back(s[i]);
  std::visit(
      [&r](const auto& g) {
        for (const auto& sp : g.spans) {
          auto len = sp.hi - sp.lo;
          using Int = std::decay_t<decltype(g.den)>;
          ++r.length_histogram[floor_log2_ratio(Int(len), g.den)];
        }
      },
      s.storage());
  return r;
}

std::string interval_set_json(const IntervalSet& s) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    RatInterval iv = s[i];
    arr.push_back({to_exact_string(iv.lo), to_exact_string(iv.hi)});
  }
  return arr.dump();
}

void write_interval_set_csv(std::ostream& out, const IntervalSet& s) {
  out << "lo_decimal,hi_decimal,inexact\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    RatInterval iv = s[i];
    const bool inexact = !decimal_is_exact(iv.lo, 17) || !decimal_is_exact(iv.hi, 17);
    out << to_decimal(iv.lo, 17, Rounding::Down) << ','
        << to_decimal(iv.hi, 17, Rounding::Up) << ',' << (inexact ? 1 : 0) << '\n';
  }
}

}  // namespace cantorprod
