#include "xorlab/sumset.hpp"

#include <algorithm>
#include <cmath>

#include "xorlab/rng.hpp"

namespace xorlab {

namespace {

constexpr int kConvolutionMaxN = 20;  // 2^{3n} must stay below int64 range

void check_same_n(const PointSet& a, const PointSet& b, const char* who) {
  if (a.n() != b.n()) fail(ErrorCode::dimension_mismatch, std::string(who) + ": mixed dimensions");
}

}  // namespace

PointSet PointSet::full(int n) {
  PointSet s(n);
  s.bits_ = BitVec(1ull << n, true);
  s.size_ = 1ull << n;
  return s;
}

PointSet PointSet::from_points(int n, std::span<const std::uint32_t> pts) {
  PointSet s(n);
  for (std::uint32_t p : pts) {
    if (p >= s.universe()) fail(ErrorCode::mask_overflow, "point >= 2^n");
    s.add(p);
  }
  return s;
}

std::vector<std::uint32_t> PointSet::points() const {
  std::vector<std::uint32_t> out;
  out.reserve(size_);
  for (std::uint64_t x = 0; x < universe(); ++x)
    if (bits_.get(x)) out.push_back(static_cast<std::uint32_t>(x));
  return out;
}

PointSet intersect_sets(const PointSet& a, const PointSet& b) {
  check_same_n(a, b, "intersect_sets");
  PointSet out(a.n());
  for (std::uint64_t x = 0; x < a.universe(); ++x)
    if (a.contains(static_cast<std::uint32_t>(x)) && b.contains(static_cast<std::uint32_t>(x)))
      out.add(static_cast<std::uint32_t>(x));
  return out;
}

PointSet shift_set(const PointSet& a, std::uint32_t by) {
  if (by >= a.universe()) fail(ErrorCode::mask_overflow, "shift_set: shift >= 2^n");
  PointSet out(a.n());
  for (std::uint64_t x = 0; x < a.universe(); ++x)
    if (a.contains(static_cast<std::uint32_t>(x))) out.add(static_cast<std::uint32_t>(x) ^ by);
  return out;
}

std::vector<std::int64_t> xor_convolution_counts(const PointSet& a, const PointSet& b) {
  check_same_n(a, b, "xor_convolution_counts");
  if (a.n() > kConvolutionMaxN)
    fail(ErrorCode::cap_exceeded, "xor convolution capped at n <= 20");
  const std::uint64_t size = a.universe();
  std::vector<std::int64_t> va(size), vb(size);
  for (std::uint64_t x = 0; x < size; ++x) {
    va[x] = a.contains(static_cast<std::uint32_t>(x)) ? 1 : 0;
    vb[x] = b.contains(static_cast<std::uint32_t>(x)) ? 1 : 0;
  }
  wht_inplace(std::span<std::int64_t>(va));
  wht_inplace(std::span<std::int64_t>(vb));
  for (std::uint64_t i = 0; i < size; ++i) va[i] *= vb[i];
  wht_inplace(std::span<std::int64_t>(va));
  for (std::uint64_t i = 0; i < size; ++i) va[i] /= static_cast<std::int64_t>(size);
  return va;
}

PointSet sum_sets(const PointSet& a, const PointSet& b) {
  check_same_n(a, b, "sum_sets");
  PointSet out(a.n());
  if (a.empty() || b.empty()) return out;
  const std::uint64_t direct_budget = 1ull << 26;
  if (a.n() <= kConvolutionMaxN && a.size() * b.size() > direct_budget) {
    auto counts = xor_convolution_counts(a, b);
    for (std::uint64_t z = 0; z < out.universe(); ++z)
      if (counts[z] > 0) out.add(static_cast<std::uint32_t>(z));
    return out;
  }
  if (a.size() * b.size() > (1ull << 30))
    fail(ErrorCode::cap_exceeded, "sum_sets: set pair too large to enumerate");
  auto pa = a.points();
  auto pb = b.points();
  for (std::uint32_t x : pa)
    for (std::uint32_t y : pb) out.add(x ^ y);
  return out;
}

PointSet iterated_sumset(const PointSet& a, int t) {
  if (t < 1) fail(ErrorCode::invalid_argument, "iterated_sumset: t >= 1");
  PointSet acc = a;
  for (int i = 1; i < t; ++i) acc = sum_sets(acc, a);
  return acc;
}

ShiftResult best_shift(const PointSet& a, const PointSet& b) {
  check_same_n(a, b, "best_shift");
  if (a.empty() || b.empty()) fail(ErrorCode::empty_set, "best_shift: empty input");
  auto counts = xor_convolution_counts(a, b);
  ShiftResult best{0, 0};
  for (std::uint64_t z = 0; z < a.universe(); ++z) {
    std::uint64_t c = static_cast<std::uint64_t>(counts[z]);
    if (c > best.count) best = {static_cast<std::uint32_t>(z), c};
  }
  return best;
}

BrWitness br_intersect(const PointSet& a1, const PointSet& a2, const PointSet& a3,
                       const PointSet& a4) {
  check_same_n(a1, a2, "br_intersect");
  check_same_n(a1, a3, "br_intersect");
  check_same_n(a1, a4, "br_intersect");
  if (a1.empty() || a2.empty() || a3.empty() || a4.empty())
    fail(ErrorCode::empty_set, "br_intersect: empty input set");

  ShiftResult s12 = best_shift(a1, a2);
  PointSet b12 = intersect_sets(a1, shift_set(a2, s12.shift));
  ShiftResult s34 = best_shift(a3, a4);
  PointSet b34 = intersect_sets(a3, shift_set(a4, s34.shift));
  if (b12.empty() || b34.empty())
    fail(ErrorCode::empty_intermediate, "br_intersect: pairwise intersection came out empty");

  ShiftResult s4 = best_shift(b12, b34);
  PointSet core = intersect_sets(b12, shift_set(b34, s4.shift));
  if (core.empty()) fail(ErrorCode::empty_intermediate, "br_intersect: four-way core is empty");

  BrWitness w{s12.shift, s34.shift, s4.shift, std::move(core),
              s12.count, s34.count, s4.count};
  return w;
}

// ---------------------------------------------------------------------------
// maximum affine subspace search
// ---------------------------------------------------------------------------

namespace {

struct SubspaceSearch {
  const PointSet& s;
  std::uint64_t universe;
  // per-offset state
  std::vector<std::uint8_t> allowed;     // candidate basis elements (shifted coords)
  std::vector<std::int32_t> suffix_cnt;  // # allowed elements >= index
  std::vector<std::uint32_t> span;       // current span, includes 0
  std::vector<std::uint32_t> chain;      // chosen basis elements
  int best_dim = -1;
  std::uint32_t best_offset = 0;
  std::vector<std::uint32_t> best_chain;
  int hard_cap;  // floor(log2 |S|)

  explicit SubspaceSearch(const PointSet& set) : s(set), universe(set.universe()) {
    hard_cap = 0;
    while ((2ull << hard_cap) <= s.size()) ++hard_cap;
  }

  void consider(std::uint32_t offset, int dim) {
    if (dim > best_dim) {
      best_dim = dim;
      best_offset = offset;
      best_chain = chain;
    }
  }

  void dfs(std::uint32_t offset, std::uint32_t last) {
    const int dim = static_cast<int>(chain.size());
    if (best_dim >= hard_cap) return;
    for (std::uint32_t v = last + 1; v < universe; ++v) {
      if (!allowed[v]) continue;
      // candidate-count prune: every later span element exceeds v - 1
      if (dim < 30) {
        std::uint64_t avail = static_cast<std::uint64_t>(suffix_cnt[v]);
        std::uint64_t span_size = 1ull << dim;
        int extra = 0;
        while ((span_size << (extra + 1)) - span_size <= avail) ++extra;
        if (dim + extra <= best_dim) return;  // no later v does better either
      }
      // v must be the minimum of its coset v ^ span (canonical greedy basis)
      bool canonical = true;
      for (std::uint32_t p : span) {
        if (p && (v ^ p) < v) {
          canonical = false;
          break;
        }
      }
      if (!canonical) continue;
      // closure: all new elements stay allowed
      bool fits = true;
      for (std::uint32_t p : span) {
        if (p && !allowed[v ^ p]) {
          fits = false;
          break;
        }
      }
      if (!fits) continue;

      const std::size_t old = span.size();
      for (std::size_t i = 0; i < old; ++i) span.push_back(span[i] ^ v);
      chain.push_back(v);
      consider(offset, dim + 1);
      dfs(offset, v);
      chain.pop_back();
      span.resize(old);
      if (best_dim >= hard_cap) return;
    }
  }

  void run_offset(std::uint32_t offset) {
    // shifted coords: w belongs iff offset ^ w is in S and offset ^ w > offset
    allowed.assign(universe, 0);
    std::int64_t cnt = 0;
    for (std::uint64_t w = 1; w < universe; ++w) {
      std::uint32_t x = offset ^ static_cast<std::uint32_t>(w);
      if (x > offset && s.contains(x)) {
        allowed[w] = 1;
        ++cnt;
      }
    }
    if (cnt + 1 < (2ll << best_dim)) return;  // cannot beat best_dim
    suffix_cnt.assign(universe + 1, 0);
    for (std::uint64_t w = universe; w-- > 0;)
      suffix_cnt[w] = suffix_cnt[w + 1] + allowed[w];
    span.assign(1, 0);
    chain.clear();
    dfs(offset, 0);
  }
};

}  // namespace

AffineSubspace max_affine_subspace_in(const PointSet& s, int max_n) {
  if (s.empty()) fail(ErrorCode::empty_set, "max_affine_subspace_in: empty set");
  if (s.n() > max_n)
    fail(ErrorCode::cap_exceeded,
         "max_affine_subspace_in: n = " + std::to_string(s.n()) + " exceeds cap " +
             std::to_string(max_n) + "; the greedy fallback (--greedy) gives a lower bound");

  SubspaceSearch search(s);
  for (std::uint64_t x = 0; x < s.universe(); ++x) {
    if (!s.contains(static_cast<std::uint32_t>(x))) continue;
    std::uint32_t offset = static_cast<std::uint32_t>(x);
    if (search.best_dim < 0) search.consider(offset, 0);  // smallest point, dim 0
    search.run_offset(offset);
    if (search.best_dim >= search.hard_cap) break;
  }
  return AffineSubspace::span_rref(s.n(), search.best_chain, search.best_offset);
}

AffineSubspace max_affine_subspace_greedy(const PointSet& s, std::uint64_t seed, int restarts) {
  if (s.empty()) fail(ErrorCode::empty_set, "max_affine_subspace_greedy: empty set");
  Rng rng(seed);
  auto pts = s.points();
  int best_dim = -1;
  std::uint32_t best_offset = 0;
  std::vector<std::uint32_t> best_chain;

  std::vector<std::uint32_t> order(pts);
  for (int r = 0; r < restarts; ++r) {
    std::uint32_t offset = pts[rng.below(pts.size())];
    // shuffle candidate order (partial Fisher-Yates over a copy)
    order = pts;
    for (std::size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[rng.below(i)]);

    std::vector<std::uint32_t> span{0};
    std::vector<std::uint32_t> chain;
    for (std::uint32_t cand : order) {
      std::uint32_t v = cand ^ offset;
      if (!v) continue;
      bool fits = true;
      for (std::uint32_t p : span) {
        if (!s.contains(offset ^ v ^ p)) {
          fits = false;
          break;
        }
      }
      if (!fits) continue;
      bool inside = false;
      for (std::uint32_t p : span)
        if (p == v) inside = true;
      if (inside) continue;
      const std::size_t old = span.size();
      for (std::size_t i = 0; i < old; ++i) span.push_back(span[i] ^ v);
      chain.push_back(v);
    }
    if (static_cast<int>(chain.size()) > best_dim) {
      best_dim = static_cast<int>(chain.size());
      best_offset = offset;
      best_chain = chain;
    }
  }
  return AffineSubspace::span_rref(s.n(), best_chain, best_offset);
}

namespace {

BogolyubovResult bogolyubov_common(const PointSet& a, AffineSubspace v, std::uint64_t four_a_size,
                                   bool exact) {
  BogolyubovResult r;
  r.codim = v.codim();
  r.v = std::move(v);
  r.alpha = a.density();
  double li = std::log2(1.0 / r.alpha);
  r.log4_inv_alpha = li * li * li * li;
  r.four_a_size = four_a_size;
  r.exact = exact;
  return r;
}

}  // namespace

BogolyubovResult bogolyubov_4a(const PointSet& a, int oracle_max_n) {
  if (a.empty()) fail(ErrorCode::empty_set, "bogolyubov_4a: empty set");
  PointSet four = iterated_sumset(a, 4);
  AffineSubspace v = max_affine_subspace_in(four, oracle_max_n);
  return bogolyubov_common(a, std::move(v), four.size(), /*exact=*/true);
}

BogolyubovResult bogolyubov_4a_greedy(const PointSet& a, std::uint64_t seed, int restarts) {
  if (a.empty()) fail(ErrorCode::empty_set, "bogolyubov_4a: empty set");
  PointSet four = iterated_sumset(a, 4);
  AffineSubspace v = max_affine_subspace_greedy(four, seed, restarts);
  return bogolyubov_common(a, std::move(v), four.size(), /*exact=*/false);
}

}  // namespace xorlab
