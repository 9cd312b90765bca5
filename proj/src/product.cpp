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

#include "cantorprod/product.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <queue>
#include <span>
#include <thread>

#include "cantorprod/detail/grid.hpp"
#include "cantorprod/errors.hpp"

namespace cantorprod {

namespace {

using detail::ChunkedUnion;
using detail::Grid;
using detail::i128;
using detail::Span;

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  if (b > std::numeric_limits<std::uint64_t>::max() - a)
    return std::numeric_limits<std::uint64_t>::max();
  return a + b;
}

// Integer coordinates for rank <= k: a point x is stored as x * scale with
// scale = (m-1) q^(k+1), where lambda = p/q. Every child endpoint of a rank
// <= k word is then an integer, and products live on the grid scale^2.
template <class Int>
struct Lattice {
  int m = 0;
  int k = 0;
  Int scale;
  std::vector<Int> length;   // length[n] = lambda^n * scale, n = 0..k+1
  std::vector<Int> spacing;  // spacing[n] = delta lambda^n * scale, n = 0..k
};

mpz_class lattice_scale(const Params& p, int k) {
  return Integer(p.m() - 1) * power(Integer(p.lambda().get_den()),
                                    static_cast<unsigned long>(k + 1));
}

template <class Int>
Lattice<Int> make_lattice(const Params& p, int k) {
  const Integer num = p.lambda().get_num();
  const Integer den = p.lambda().get_den();
  const unsigned long K = static_cast<unsigned long>(k + 1);
  Lattice<Int> lat;
  lat.m = p.m();
  lat.k = k;
  lat.scale = detail::from_mpz<Int>(lattice_scale(p, k));
  for (unsigned long n = 0; n <= K; ++n)
    lat.length.push_back(detail::from_mpz<Int>(Integer(p.m() - 1) * power(num, n) *
                                               power(den, K - n)));
  for (unsigned long n = 0; n + 1 <= K; ++n)
    lat.spacing.push_back(
        detail::from_mpz<Int>((den - num) * power(num, n) * power(den, K - n - 1)));
  return lat;
}

// Shared count of generated product intervals across recursion levels and
// worker threads.
class BudgetCounter {
 public:
  explicit BudgetCounter(std::uint64_t cap) : cap_(cap) {}

  void charge() {
    if (used_.fetch_add(1, std::memory_order_relaxed) + 1 > cap_)
      throw Error(ErrorCode::ResourceBudgetExceeded,
                  "generated product intervals exceed the budget of " +
                      std::to_string(cap_));
  }

 private:
  std::uint64_t cap_;
  std::atomic<std::uint64_t> used_{0};
};

template <class Int>
bool box_covered(const std::vector<Span<Int>>& spans, const Int& a, const Int& b) {
  auto it = std::upper_bound(spans.begin(), spans.end(), a,
                             [](const Int& v, const Span<Int>& s) { return v < s.lo; });
  if (it == spans.begin()) return false;
  --it;
  return !(it->hi < b);
}

// Processes one slice of the rank-n frontier: skips words whose bounding box
// [lo^2, hi^2] already lies in the union of lower ranks (every descendant hat
// lies in that box), emits the hat intervals of the rest, and collects their
// children for rank n + 1.
template <class Int>
void expand_slice(const Lattice<Int>& lat, int n, std::span<const Int> slice,
                  const std::vector<Span<Int>>* lower_ranks, ChunkedUnion<Int>& out,
                  std::vector<Int>* next, CoreStats& stats, BudgetCounter& budget) {
  const auto un = static_cast<std::size_t>(n);
  const auto um = static_cast<std::size_t>(lat.m);
  const int first = n == 0 ? 1 : 0;
  std::vector<Int> lo(um);
  std::vector<Int> hi(um);
  for (const Int& left : slice) {
    if (lower_ranks != nullptr) {
      Int right = left + lat.length[un];
      if (box_covered(*lower_ranks, Int(left * left), Int(right * right))) {
        ++stats.pruned_subtrees;
        continue;
      }
    }
    for (std::size_t i = 0; i < um; ++i) {
      lo[i] = left + lat.spacing[un] * Int(static_cast<int>(i));
      hi[i] = lo[i] + lat.length[un + 1];
    }
    for (std::size_t a = static_cast<std::size_t>(first); a < um; ++a)
      for (std::size_t b = a + 1; b < um; ++b) {
        budget.charge();
        out.add(Int(lo[a] * lo[b]), Int(hi[a] * hi[b]));
        ++stats.generated;
      }
    if (next != nullptr)
      for (std::size_t i = 0; i < um; ++i) next->push_back(lo[i]);
  }
}

// Builds the core one rank at a time. The frontier holds the left endpoints
// of the unpruned family words of the current rank.
template <class Int>
Grid<Int> build_core(const Params& p, int k, const CoreOptions& opt, CoreStats& stats,
                     BudgetCounter& budget) {
  const Lattice<Int> lat = make_lattice<Int>(p, k);
  const unsigned jobs = std::max(1u, opt.jobs);

  std::vector<Span<Int>> core;
  {
    ChunkedUnion<Int> acc(opt.chunk_size);
    const Int root(0);
    expand_slice<Int>(lat, 0, std::span<const Int>(&root, 1), nullptr, acc, nullptr,
                      stats, budget);
    core = acc.finish();
  }
  std::vector<Int> frontier;
  for (int i = 1; i < p.m(); ++i) frontier.push_back(lat.spacing[0] * Int(i));

  for (int n = 1; n <= k && !frontier.empty(); ++n) {
    const bool last = n == k;
    const auto* lower = opt.prune ? &core : nullptr;
    std::vector<std::vector<Span<Int>>> runs;
    std::vector<Int> next;

    if (jobs == 1 || frontier.size() < 1024) {
      ChunkedUnion<Int> acc(opt.chunk_size);
      expand_slice<Int>(lat, n, frontier, lower, acc, last ? nullptr : &next, stats,
                        budget);
      runs.push_back(acc.finish());
    } else {
      // Contiguous slices keep the next frontier in the same order as the
      // sequential schedule.
      const std::size_t per = (frontier.size() + jobs - 1) / jobs;
      std::vector<std::vector<Span<Int>>> worker_runs(jobs);
      std::vector<std::vector<Int>> worker_next(jobs);
      std::vector<CoreStats> worker_stats(jobs);
      std::vector<std::exception_ptr> failures(jobs);
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < jobs; ++t) {
        const std::size_t begin = std::min(frontier.size(), t * per);
        const std::size_t end = std::min(frontier.size(), begin + per);
        pool.emplace_back([&, t, begin, end] {
          try {
            ChunkedUnion<Int> acc(opt.chunk_size);
            expand_slice<Int>(lat, n,
                              std::span<const Int>(frontier.data() + begin, end - begin),
                              lower, acc, last ? nullptr : &worker_next[t],
                              worker_stats[t], budget);
            worker_runs[t] = acc.finish();
          } catch (...) {
            failures[t] = std::current_exception();
          }
        });
      }
      for (auto& th : pool) th.join();
      for (auto& f : failures)
        if (f) std::rethrow_exception(f);
      for (unsigned t = 0; t < jobs; ++t) {
        stats.generated += worker_stats[t].generated;
        stats.pruned_subtrees += worker_stats[t].pruned_subtrees;
        runs.push_back(std::move(worker_runs[t]));
        next.insert(next.end(), std::make_move_iterator(worker_next[t].begin()),
                    std::make_move_iterator(worker_next[t].end()));
      }
    }
    runs.push_back(std::move(core));
    core = detail::kway_merge(std::move(runs));
    frontier = std::move(next);
  }

  Grid<Int> out;
  out.den = lat.scale * lat.scale;
  out.spans = std::move(core);
  return out;
}

void check_k(int k, const char* what) {
  if (k < 0) throw Error(ErrorCode::DomainError, std::string(what) + " must be >= 0");
}

}  // namespace

std::vector<RatInterval> hat_intervals(const Params& p, const Word& w) {
  if (!in_family_A(w))
    throw Error(ErrorCode::NotInFamilyA,
                "word '" + w.to_string() + "' does not start with a nonzero digit");
  std::vector<RatInterval> kids = children(p, w);
  const int first = w.empty() ? 1 : 0;
  std::vector<RatInterval> out;
  for (int a = first; a < p.m(); ++a)
    for (int b = a + 1; b < p.m(); ++b) {
      const auto& x = kids[static_cast<std::size_t>(a)];
      const auto& y = kids[static_cast<std::size_t>(b)];
      out.push_back({x.lo * y.lo, x.hi * y.hi});
    }
  return out;
}

std::uint64_t product_interval_count(int m, int k) {
  const auto um = static_cast<std::uint64_t>(m);
  const std::uint64_t root = (um - 1) * (um - 2) / 2;
  const std::uint64_t pairs = um * (um - 1) / 2;
  std::uint64_t words = 1;  // m^k
  for (int i = 0; i < k; ++i) words = saturating_mul(words, um);
  if (words == std::numeric_limits<std::uint64_t>::max())
    return std::numeric_limits<std::uint64_t>::max();
  return saturating_add(root, saturating_mul(pairs, words - 1));
}

IntervalSet rank_truncated_core(const Params& p, int k, const CoreOptions& opt,
                                CoreStats* stats) {
  check_k(k, "rank k");
  // Without pruning the count is known up front; with pruning it is charged
  // as intervals are generated.
  if (!opt.prune) {
    const std::uint64_t count = product_interval_count(p.m(), k);
    if (count > opt.budget)
      throw Error(ErrorCode::ResourceBudgetExceeded,
                  "rank " + std::to_string(k) + " needs " + std::to_string(count) +
                      " product intervals, budget is " + std::to_string(opt.budget));
  }
  CoreStats local;
  CoreStats& st = stats != nullptr ? *stats : local;
  BudgetCounter budget(opt.budget);
  const mpz_class scale = lattice_scale(p, k);
  if (2 * detail::bit_length(scale) <= detail::kNativeBits)
    return IntervalSet::from_grid(build_core<i128>(p, k, opt, st, budget));
  return IntervalSet::from_grid(build_core<mpz_class>(p, k, opt, st, budget));
}

Rational error_bound(const Params& p, int k, BoundKind kind) {
  check_k(k, "rank k");
  const Rational ml = Rational(p.m()) * p.lambda();
  Rational b = Rational(3) * power(ml, static_cast<unsigned long>(k + 1)) / (Rational(1) - ml);
  if (kind == BoundKind::Tight) b *= Rational(p.m() - 1, p.m());
  b.canonicalize();
  return b;
}

Rational tail_bound(const Params& p, int N) {
  check_k(N, "depth N");
  Rational t = power(p.lambda(), static_cast<unsigned long>(N + 1)) / (Rational(1) - p.lambda());
  t.canonicalize();
  return t;
}

Rational scaling_sum(const Params& p, int N) {
  check_k(N, "depth N");
  Rational s = (Rational(1) - power(p.lambda(), static_cast<unsigned long>(N + 1))) /
               (Rational(1) - p.lambda());
  s.canonicalize();
  return s;
}

Rational width_bound(const Params& p, int k, int N, BoundKind bound) {
  Rational w = error_bound(p, k, bound) * scaling_sum(p, N) + tail_bound(p, N);
  w.canonicalize();
  return w;
}

IntervalSet scaled_union(const Params& p, const IntervalSet& core, int N) {
  check_k(N, "depth N");
  if (N == 0 || core.empty()) return core;
  const Integer num = p.lambda().get_num();
  const Integer den = p.lambda().get_den();
  const auto uN = static_cast<unsigned long>(N);
  const Integer qN = power(den, uN);

  auto copies = [&](auto grid) {
    using G = decltype(grid);
    using Int = std::decay_t<decltype(grid.den)>;
    std::vector<std::vector<Span<Int>>> runs;
    runs.reserve(uN + 1);
    // Smallest copies first; when copies are disjoint the merge degenerates
    // into concatenation.
    for (unsigned long n = uN + 1; n-- > 0;) {
      const Int f = detail::from_mpz<Int>(power(num, n) * power(den, uN - n));
      std::vector<Span<Int>> run;
      run.reserve(grid.spans.size());
      for (const auto& s : grid.spans) run.push_back({Int(s.lo * f), Int(s.hi * f)});
      runs.push_back(std::move(run));
    }
    G out;
    out.den = grid.den * detail::from_mpz<Int>(qN);
    out.spans = detail::kway_merge(std::move(runs));
    return IntervalSet::from_grid(std::move(out), core.dropped_degenerate());
  };

  const std::size_t need = detail::bit_length(mpz_class(core.denominator().get_num())) +
                           detail::bit_length(qN);
  if (const auto* n = std::get_if<IntervalSet::NativeGrid>(&core.storage());
      n != nullptr && need <= detail::kNativeBits)
    return copies(*n);
  if (const auto* n = std::get_if<IntervalSet::NativeGrid>(&core.storage()))
    return copies(detail::widen(*n));
  return copies(std::get<IntervalSet::BigGrid>(core.storage()));
}

namespace {

template <class Int>
Rational stream_measure(const detail::Grid<Int>& grid, const Integer& num,
                        const Integer& den, unsigned long N) {
  struct Cursor {
    Int factor;
    std::size_t pos = 0;
    Int lo;
    Int hi;
  };
  std::vector<Cursor> cursors;
  for (unsigned long n = 0; n <= N; ++n) {
    Cursor c;
    c.factor = detail::from_mpz<Int>(power(num, n) * power(den, N - n));
    c.lo = grid.spans.front().lo * c.factor;
    c.hi = grid.spans.front().hi * c.factor;
    cursors.push_back(std::move(c));
  }
  auto greater = [&cursors](std::size_t a, std::size_t b) {
    return cursors[b].lo < cursors[a].lo;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(greater)> heap(greater);
  for (std::size_t i = 0; i < cursors.size(); ++i) heap.push(i);

  Int total = 0;
  Int cur_lo = 0;
  Int cur_hi = 0;
  bool open = false;
  while (!heap.empty()) {
    const std::size_t i = heap.top();
    heap.pop();
    Cursor& c = cursors[i];
    if (open && !(cur_hi < c.lo)) {
      if (cur_hi < c.hi) cur_hi = c.hi;
    } else {
      if (open) total += cur_hi - cur_lo;
      cur_lo = c.lo;
      cur_hi = c.hi;
      open = true;
    }
    if (++c.pos < grid.spans.size()) {
      c.lo = grid.spans[c.pos].lo * c.factor;
      c.hi = grid.spans[c.pos].hi * c.factor;
      heap.push(i);
    }
  }
  if (open) total += cur_hi - cur_lo;
  Rational r(detail::as_mpz(total), detail::as_mpz(grid.den) * power(den, N));
  r.canonicalize();
  return r;
}

}  // namespace

Rational scaled_union_measure(const Params& p, const IntervalSet& core, int N) {
  check_k(N, "depth N");
  if (core.empty()) return Rational(0);
  const Integer num = p.lambda().get_num();
  const Integer den = p.lambda().get_den();
  const auto uN = static_cast<unsigned long>(N);
  const std::size_t need = detail::bit_length(mpz_class(core.denominator().get_num())) +
                           detail::bit_length(power(den, uN));
  if (const auto* n = std::get_if<IntervalSet::NativeGrid>(&core.storage())) {
    if (need <= detail::kNativeBits) return stream_measure(*n, num, den, uN);
    return stream_measure(detail::widen(*n), num, den, uN);
  }
  return stream_measure(std::get<IntervalSet::BigGrid>(core.storage()), num, den, uN);
}

MeasureEnclosure make_enclosure(const Params& p, const Rational& lower, int k, int N,
                                BoundKind bound) {
  MeasureEnclosure e;
  e.lower = lower;
  e.rank_k = k;
  e.depth_N = N;
  e.certified = p.certified() && p.in_theorem_range();
  if (e.certified) {
    Rational up = lower + width_bound(p, k, N, bound);
    e.upper = up < 1 ? up : Rational(1);
  } else {
    e.upper = 1;
  }
  e.upper.canonicalize();
  return e;
}

ProductApprox full_product_approx(const Params& p, int k, int N, const ApproxOptions& opt) {
  check_k(k, "rank k");
  check_k(N, "depth N");
  ProductApprox out;
  IntervalSet core = rank_truncated_core(p, k, opt.core, &out.stats);
  if (opt.materialize) {
    out.set = scaled_union(p, core, N);
    out.enclosure = make_enclosure(p, out.set.total_length(), k, N, opt.bound);
  } else {
    out.enclosure = make_enclosure(p, scaled_union_measure(p, core, N), k, N, opt.bound);
    out.set = std::move(core);
  }
  return out;
}

Truncation resolve_truncation(const Params& p, const Rational& target_err,
                              std::uint64_t budget, BoundKind bound) {
  if (target_err <= 0) throw Error(ErrorCode::DomainError, "target error must be positive");
  if (product_interval_count(p.m(), 0) > budget)
    throw Error(ErrorCode::ResourceBudgetExceeded, "budget too small for rank 0");
  Truncation t;
  // Deeper scaling is cheap next to deeper rank, so the tail gets a small
  // share of the target.
  const Rational tail_share = target_err / 1000;
  while (tail_bound(p, t.depth_N) > tail_share) ++t.depth_N;
  // width_bound(k, N) decreases geometrically in k toward tail_bound(N), so
  // this terminates.
  while (width_bound(p, t.rank_k, t.depth_N, bound) > target_err) ++t.rank_k;
  while (product_interval_count(p.m(), t.fallback_rank + 1) <= budget) ++t.fallback_rank;
  return t;
}

TargetedApprox approximate_to_target(const Params& p, const Rational& target_err,
                                     const ApproxOptions& opt) {
  const Truncation t = resolve_truncation(p, target_err, opt.core.budget, opt.bound);
  TargetedApprox out;
  out.target_err = target_err;
  if (t.rank_k <= t.fallback_rank) {
    out.approx = full_product_approx(p, t.rank_k, t.depth_N, opt);
    out.target_met = true;
    return out;
  }
  try {
    out.approx = full_product_approx(p, t.rank_k, t.depth_N, opt);
    out.target_met = true;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ResourceBudgetExceeded) throw;
    out.approx = full_product_approx(p, t.fallback_rank, t.depth_N, opt);
    out.target_met = false;
  }
  return out;
}

ChainConditionReport verify_chain_conditions(const Params& p) {
  const Rational& l = p.lambda();
  const Rational& g = p.gap();
  const Rational& d = p.step();
  ChainConditionReport r;
  r.quantity_h = l * l + g * l + d * d - g;
  r.quantity_v = d * d + l * d - g;
  r.quantity_claim = (Rational(2 * p.m() - 1) * l - 1) / Rational(p.m() - 1);
  r.quantity_h.canonicalize();
  r.quantity_v.canonicalize();
  r.quantity_claim.canonicalize();
  r.all_pass = r.quantity_h >= 0 && r.quantity_v >= 0 && r.quantity_claim >= 0;
  return r;
}

Remark2Report remark2_check(const Params& p, int k, const CoreOptions& opt) {
  if (p.m() != 2 || !(p.lambda() > Rational(11, 25) && p.lambda() < Rational(1, 2)))
    throw Error(ErrorCode::RemarkRangeError,
                "the full-interval check applies only to m = 2, 0.44 < lambda < 1/2");
  Remark2Report r;
  const Rational one_minus = Rational(1) - p.lambda();
  r.target = {one_minus * one_minus, Rational(1)};
  IntervalSet core = rank_truncated_core(p, k, opt);
  r.contained = core.within(r.target);
  r.core_measure = core.total_length();
  r.coverage_gap = r.target.length() - r.core_measure;
  r.error_bound = error_bound(p, k);
  r.gap_within_bound = r.coverage_gap <= r.error_bound;
  return r;
}

}  // namespace cantorprod
