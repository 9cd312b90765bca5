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

// Shared generators and independent reference computations for the tests.
// Nothing here calls into the library's interval machinery: the reference
// routes compose the maps f_i literally and sweep plain rational intervals.

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "cantorprod/cantor.hpp"
#include "cantorprod/rational.hpp"

namespace testsupport {

using cantorprod::Params;
using cantorprod::RatInterval;
using cantorprod::Rational;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  bool coin() { return uniform(0, 1) == 1; }

  /// Rational in [lo, hi) with denominator at most max_den (falls back to lo).
  Rational rational_in(const Rational& lo, const Rational& hi, int max_den) {
    for (int tries = 0; tries < 64; ++tries) {
      const int q = uniform(1, max_den);
      const int p = uniform(0, max_den * 4);
      Rational x(p, q);
      x.canonicalize();
      if (lo <= x && x < hi) return x;
    }
    return lo;
  }

  /// Certified parameters with m in [2, max_m].
  Params certified(int max_m, int max_den) {
    const int m = uniform(2, max_m);
    const Rational l = rational_in(Rational(1, m + 1), Rational(1, m), max_den);
    return cantorprod::params_new(m, l, cantorprod::Mode::Certified);
  }

  /// Closed intervals with endpoints on the grid 1/den inside [0, 1]; some
  /// degenerate when allow_degenerate.
  std::vector<RatInterval> intervals(int count, int den, bool allow_degenerate) {
    std::vector<RatInterval> out;
    for (int i = 0; i < count; ++i) {
      int a = uniform(0, den);
      int b = uniform(0, den);
      if (a > b) std::swap(a, b);
      if (a == b && !allow_degenerate) b = std::min(den, a + 1), a = b - 1;
      Rational lo(a, den), hi(b, den);
      lo.canonicalize();
      hi.canonicalize();
      out.push_back({lo, hi});
    }
    return out;
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    std::shuffle(v.begin(), v.end(), eng_);
  }

 private:
  std::mt19937_64 eng_;
};

/// Lebesgue measure of a union of closed intervals by a sort-and-sweep.
inline Rational sweep_measure(std::vector<RatInterval> v) {
  std::sort(v.begin(), v.end(), [](const RatInterval& a, const RatInterval& b) {
    return a.lo < b.lo;
  });
  Rational total = 0;
  bool open = false;
  Rational lo, hi;
  for (const auto& iv : v) {
    if (!(iv.lo < iv.hi)) continue;
    if (open && iv.lo <= hi) {
      if (hi < iv.hi) hi = iv.hi;
      continue;
    }
    if (open) total += hi - lo;
    lo = iv.lo;
    hi = iv.hi;
    open = true;
  }
  if (open) total += hi - lo;
  return total;
}

/// Sorted disjoint components of a union (touching intervals fused).
inline std::vector<RatInterval> sweep_components(std::vector<RatInterval> v) {
  std::sort(v.begin(), v.end(), [](const RatInterval& a, const RatInterval& b) {
    return a.lo < b.lo;
  });
  std::vector<RatInterval> out;
  for (const auto& iv : v) {
    if (!(iv.lo < iv.hi)) continue;
    if (!out.empty() && iv.lo <= out.back().hi) {
      if (out.back().hi < iv.hi) out.back().hi = iv.hi;
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

/// f_{d1} o ... o f_{dn}([0,1]) composed literally.
inline RatInterval compose(const Params& p, const std::vector<int>& digits) {
  Rational lo = 0, hi = 1;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    const Rational shift = Rational(*it) * p.step();
    lo = p.lambda() * lo + shift;
    hi = p.lambda() * hi + shift;
  }
  lo.canonicalize();
  hi.canonicalize();
  return {lo, hi};
}

/// Hat products of one word, from literal map composition.
inline std::vector<RatInterval> naive_hat(const Params& p, const std::vector<int>& w) {
  std::vector<RatInterval> kids;
  for (int i = 0; i < p.m(); ++i) {
    auto d = w;
    d.push_back(i);
    kids.push_back(compose(p, d));
  }
  std::vector<RatInterval> out;
  for (int a = w.empty() ? 1 : 0; a < p.m(); ++a)
    for (int b = a + 1; b < p.m(); ++b) {
      Rational lo = kids[static_cast<std::size_t>(a)].lo * kids[static_cast<std::size_t>(b)].lo;
      Rational hi = kids[static_cast<std::size_t>(a)].hi * kids[static_cast<std::size_t>(b)].hi;
      lo.canonicalize();
      hi.canonicalize();
      out.push_back({lo, hi});
    }
  return out;
}

/// Every hat product of every family word of rank <= k, unmerged.
inline std::vector<RatInterval> naive_core_items(const Params& p, int k) {
  std::vector<RatInterval> out = naive_hat(p, {});
  std::vector<std::vector<int>> level;
  for (int d = 1; d < p.m(); ++d) level.push_back({d});
  for (int r = 1; r <= k; ++r) {
    std::vector<std::vector<int>> next;
    for (const auto& w : level) {
      auto h = naive_hat(p, w);
      out.insert(out.end(), h.begin(), h.end());
      for (int d = 0; d < p.m(); ++d) {
        auto c = w;
        c.push_back(d);
        next.push_back(std::move(c));
      }
    }
    level = std::move(next);
  }
  return out;
}

inline Rational rat(long p, long q = 1) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

}  // namespace testsupport
