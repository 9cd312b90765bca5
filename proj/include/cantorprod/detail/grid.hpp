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

// Interval unions on a common-denominator grid. An endpoint a/D is stored as
// the integer a; the grid owns D. Two numerator types are used: a native
// 128-bit integer while every numerator and the denominator stay below
// 2^kNativeBits, and GMP integers otherwise.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <queue>
#include <type_traits>
#include <utility>
#include <vector>

namespace cantorprod::detail {

using i128 = __int128;

/// Headroom below 127 bits so sums of two values and small multiples of a
/// numerator cannot overflow.
inline constexpr std::size_t kNativeBits = 124;

inline mpz_class to_mpz(i128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                            : static_cast<unsigned __int128>(v);
  std::uint64_t words[2] = {static_cast<std::uint64_t>(u),
                            static_cast<std::uint64_t>(u >> 64)};
  mpz_class out;
  mpz_import(out.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, words);
  if (neg) out = -out;
  return out;
}

/// Precondition: bit_length(v) < 127.
inline i128 to_i128(const mpz_class& v) {
  std::uint64_t words[2] = {0, 0};
  std::size_t count = 0;
  mpz_export(words, &count, -1, sizeof(std::uint64_t), 0, 0, v.get_mpz_t());
  unsigned __int128 u =
      (static_cast<unsigned __int128>(words[1]) << 64) | words[0];
  i128 out = static_cast<i128>(u);
  return sgn(v) < 0 ? -out : out;
}

inline std::size_t bit_length(const mpz_class& v) {
  return sgn(v) == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

inline std::size_t bit_length(i128 v) {
  unsigned __int128 u = v < 0 ? static_cast<unsigned __int128>(-(v + 1)) + 1
                              : static_cast<unsigned __int128>(v);
  std::size_t n = 0;
  while (u != 0) {
    u >>= 1;
    ++n;
  }
  return n;
}

inline mpz_class as_mpz(const mpz_class& v) { return v; }
inline mpz_class as_mpz(i128 v) { return to_mpz(v); }

template <class Int>
Int from_mpz(const mpz_class& v) {
  if constexpr (std::is_same_v<Int, i128>) {
    return to_i128(v);
  } else {
    return v;
  }
}

template <class Int>
struct Span {
  Int lo;
  Int hi;
};

template <class Int>
bool span_less(const Span<Int>& a, const Span<Int>& b) {
  if (a.lo < b.lo) return true;
  if (b.lo < a.lo) return false;
  return a.hi < b.hi;
}

template <class Int>
struct Grid {
  Int den;
  std::vector<Span<Int>> spans;  // sorted, disjoint, non-touching
};

/// Merges overlapping or touching spans of a sorted vector in place.
template <class Int>
void coalesce_sorted(std::vector<Span<Int>>& v) {
  if (v.empty()) return;
  std::size_t w = 0;
  for (std::size_t r = 1; r < v.size(); ++r) {
    if (v[r].lo <= v[w].hi) {
      if (v[w].hi < v[r].hi) v[w].hi = std::move(v[r].hi);
    } else {
      ++w;
      if (w != r) v[w] = std::move(v[r]);
    }
  }
  v.resize(w + 1);
}

template <class Int>
void sort_and_coalesce(std::vector<Span<Int>>& v) {
  std::sort(v.begin(), v.end(), span_less<Int>);
  coalesce_sorted(v);
}

/// Heap merge of sorted canonical runs into one canonical run.
template <class Int>
std::vector<Span<Int>> kway_merge(std::vector<std::vector<Span<Int>>> runs) {
  runs.erase(std::remove_if(runs.begin(), runs.end(),
                            [](const auto& r) { return r.empty(); }),
             runs.end());
  if (runs.empty()) return {};
  if (runs.size() == 1) return std::move(runs.front());

  std::size_t total = 0;
  for (const auto& r : runs) total += r.size();

  using Cursor = std::pair<std::size_t, std::size_t>;  // run, position
  auto greater = [&runs](const Cursor& a, const Cursor& b) {
    return span_less(runs[b.first][b.second], runs[a.first][a.second]);
  };
  std::priority_queue<Cursor, std::vector<Cursor>, decltype(greater)> heap(greater);
  for (std::size_t i = 0; i < runs.size(); ++i) heap.emplace(i, 0);

  std::vector<Span<Int>> out;
  out.reserve(total);
  while (!heap.empty()) {
    auto [run, pos] = heap.top();
    heap.pop();
    Span<Int>& s = runs[run][pos];
    if (!out.empty() && s.lo <= out.back().hi) {
      if (out.back().hi < s.hi) out.back().hi = std::move(s.hi);
    } else {
      out.push_back(std::move(s));
    }
    if (pos + 1 < runs[run].size()) heap.emplace(run, pos + 1);
  }
  out.shrink_to_fit();
  return out;
}

/// Accumulates arbitrary spans into bounded chunks; each full chunk is sorted
/// and coalesced into a run, and finish() k-way merges all runs.
template <class Int>
class ChunkedUnion {
 public:
  explicit ChunkedUnion(std::size_t chunk_size)
      : chunk_size_(chunk_size == 0 ? 1 : chunk_size) {
    buffer_.reserve(std::min<std::size_t>(chunk_size_, 1u << 16));
  }

  void add(Int lo, Int hi) {
    buffer_.push_back({std::move(lo), std::move(hi)});
    ++count_;
    if (buffer_.size() >= chunk_size_) flush();
  }

  void add_run(std::vector<Span<Int>> run) { runs_.push_back(std::move(run)); }

  void flush() {
    if (buffer_.empty()) return;
    sort_and_coalesce(buffer_);
    runs_.push_back(std::move(buffer_));
    buffer_ = {};
    // Keep the number of live runs small by folding pairs of runs early.
    if (runs_.size() >= 16) {
      auto merged = kway_merge(std::move(runs_));
      runs_.clear();
      runs_.push_back(std::move(merged));
    }
  }

  std::vector<Span<Int>> finish() {
    flush();
    return kway_merge(std::move(runs_));
  }

  std::uint64_t count() const noexcept { return count_; }

 private:
  std::size_t chunk_size_;
  std::vector<Span<Int>> buffer_;
  std::vector<std::vector<Span<Int>>> runs_;
  std::uint64_t count_ = 0;
};

/// Multiplies every numerator by `num` and the denominator by `den`.
template <class Int>
Grid<Int> rescale(const Grid<Int>& g, const Int& num, const Int& den) {
  Grid<Int> out;
  out.den = g.den * den;
  out.spans.reserve(g.spans.size());
  for (const auto& s : g.spans) out.spans.push_back({s.lo * num, s.hi * num});
  return out;
}

template <class Int>
std::size_t max_bits(const Grid<Int>& g) {
  std::size_t b = bit_length(g.den);
  if (!g.spans.empty()) {
    b = std::max(b, bit_length(g.spans.front().lo));
    b = std::max(b, bit_length(g.spans.back().hi));
  }
  return b;
}

inline Grid<mpz_class> widen(const Grid<i128>& g) {
  Grid<mpz_class> out;
  out.den = to_mpz(g.den);
  out.spans.reserve(g.spans.size());
  for (const auto& s : g.spans) out.spans.push_back({to_mpz(s.lo), to_mpz(s.hi)});
  return out;
}

inline Grid<i128> narrow(const Grid<mpz_class>& g) {
  Grid<i128> out;
  out.den = to_i128(g.den);
  out.spans.reserve(g.spans.size());
  for (const auto& s : g.spans) out.spans.push_back({to_i128(s.lo), to_i128(s.hi)});
  return out;
}

template <class Int>
Int total_numerator(const Grid<Int>& g) {
  Int sum = 0;
  for (const auto& s : g.spans) sum += s.hi - s.lo;
  return sum;
}

}  // namespace cantorprod::detail
