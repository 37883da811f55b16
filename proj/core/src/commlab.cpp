#include "xorlab/commlab.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>

#include "xorlab/rng.hpp"

namespace xorlab {

namespace {

int cost_below(const Protocol& p, std::int32_t id, std::vector<int>& memo) {
  int& slot = memo[static_cast<std::size_t>(id)];
  if (slot >= 0) return slot;
  const auto& node = p.nodes[static_cast<std::size_t>(id)];
  if (node.is_leaf()) return slot = 0;
  return slot = 1 + std::max(cost_below(p, node.child0, memo), cost_below(p, node.child1, memo));
}

}  // namespace

int Protocol::cost() const {
  if (root < 0) fail(ErrorCode::malformed_protocol, "protocol has no root");
  std::vector<int> memo(nodes.size(), -1);
  return cost_below(*this, root, memo);
}

Protocol simulate_pdt_protocol(const ParityDecisionTree& t, int k) {
  if (k < 2) fail(ErrorCode::invalid_argument, "simulate_pdt_protocol: k must be >= 2");
  if (t.root() < 0) fail(ErrorCode::malformed_tree, "simulate_pdt_protocol: tree has no root");
  Protocol p;
  p.k = k;
  p.n = t.n();

  std::map<std::uint32_t, std::int32_t> pool_ids;
  auto form_id = [&](std::uint32_t mask) {
    auto it = pool_ids.find(mask);
    if (it != pool_ids.end()) return it->second;
    Message m;
    m.is_form = true;
    m.mask = mask;
    p.pool.push_back(std::move(m));
    std::int32_t id = static_cast<std::int32_t>(p.pool.size() - 1);
    pool_ids.emplace(mask, id);
    return id;
  };

  // One broadcast block per PDT query: players 0..k-1 announce s.x_i in
  // order; the running parity of the block selects the PDT branch. Blocks
  // share the two subtrees below them.
  std::vector<std::int32_t> remap(t.nodes().size(), -1);
  std::function<std::int32_t(std::int32_t)> build = [&](std::int32_t tid) -> std::int32_t {
    std::int32_t& slot = remap[static_cast<std::size_t>(tid)];
    if (slot >= 0) return slot;
    const auto& tnode = t.nodes()[static_cast<std::size_t>(tid)];
    if (tnode.is_leaf()) {
      Protocol::Node leaf;
      leaf.leaf = tnode.leaf;
      p.nodes.push_back(leaf);
      return slot = static_cast<std::int32_t>(p.nodes.size() - 1);
    }
    std::int32_t sub0 = build(tnode.child0);
    std::int32_t sub1 = build(tnode.child1);
    std::int32_t mid = form_id(tnode.query);
    // level k-1 down to 0; two nodes per level, one per running parity
    std::array<std::int32_t, 2> next{sub0, sub1};
    for (int level = k - 1; level >= 0; --level) {
      std::array<std::int32_t, 2> cur;
      for (int par = 0; par < (level == 0 ? 1 : 2); ++par) {
        Protocol::Node node;
        node.speaker = static_cast<std::uint8_t>(level);
        node.msg = mid;
        node.child0 = next[par];
        node.child1 = next[par ^ 1];
        p.nodes.push_back(node);
        cur[par] = static_cast<std::int32_t>(p.nodes.size() - 1);
      }
      if (level == 0) cur[1] = cur[0];
      next = cur;
    }
    return slot = next[0];
  };
  p.root = build(t.root());
  return p;
}

RunResult run_protocol(const Protocol& p, std::span<const std::uint32_t> inputs) {
  if (static_cast<int>(inputs.size()) != p.k)
    fail(ErrorCode::dimension_mismatch, "run_protocol: expected one input per player");
  for (std::uint32_t x : inputs)
    if (x >= (1u << p.n)) fail(ErrorCode::mask_overflow, "run_protocol: input >= 2^n");
  if (p.root < 0) fail(ErrorCode::malformed_protocol, "protocol has no root");

  RunResult r;
  std::int32_t id = p.root;
  for (;;) {
    const auto& node = p.nodes[static_cast<std::size_t>(id)];
    if (node.is_leaf()) {
      r.output = node.leaf;
      return r;
    }
    if (node.msg < 0 || node.speaker >= p.k)
      fail(ErrorCode::malformed_protocol, "inner node lacks a message or speaker");
    int bit = p.pool[static_cast<std::size_t>(node.msg)].eval(inputs[node.speaker]);
    r.transcript.push_back(bit ? '1' : '0');
    id = bit ? node.child1 : node.child0;
    if (id < 0) fail(ErrorCode::malformed_protocol, "inner node lacks a child");
  }
}

// ---------------------------------------------------------------------------
// leaf rectangles
// ---------------------------------------------------------------------------

namespace {

void check_rect_caps(const Protocol& p) {
  if (p.k > 4 || p.k * p.n > 24)
    fail(ErrorCode::cap_exceeded, "rectangle enumeration capped at k <= 4, k*n <= 24");
}

std::uint64_t domain_mask(int n) {
  const std::uint64_t bits = 1ull << n;
  return (bits >= 64) ? ~0ull : ((1ull << bits) - 1);
}

}  // namespace

void for_each_leaf_rect(const Protocol& p,
                        const std::function<void(std::span<const std::uint64_t>, int)>& visit) {
  check_rect_caps(p);
  if (p.root < 0) fail(ErrorCode::malformed_protocol, "protocol has no root");

  // per-message mask of inputs answered '1'
  const std::uint64_t universe = 1ull << p.n;
  std::vector<std::uint64_t> ones(p.pool.size(), 0);
  for (std::size_t m = 0; m < p.pool.size(); ++m)
    for (std::uint64_t x = 0; x < universe; ++x)
      if (p.pool[m].eval(static_cast<std::uint32_t>(x))) ones[m] |= 1ull << x;

  std::vector<std::uint64_t> masks(static_cast<std::size_t>(p.k), domain_mask(p.n));
  std::function<void(std::int32_t)> rec = [&](std::int32_t id) {
    const auto& node = p.nodes[static_cast<std::size_t>(id)];
    if (node.is_leaf()) {
      visit(masks, node.leaf);
      return;
    }
    const std::uint64_t prev = masks[node.speaker];
    const std::uint64_t on = ones[static_cast<std::size_t>(node.msg)];
    if ((prev & ~on) != 0) {
      masks[node.speaker] = prev & ~on;
      rec(node.child0);
    }
    if ((prev & on) != 0) {
      masks[node.speaker] = prev & on;
      rec(node.child1);
    }
    masks[node.speaker] = prev;
  };
  rec(p.root);
}

std::vector<Hyperrectangle> leaf_rectangles(const Protocol& p, std::uint64_t max_paths) {
  check_rect_caps(p);
  if ((1ull << p.cost()) > max_paths)
    fail(ErrorCode::cap_exceeded, "leaf_rectangles: too many leaf paths to materialize");
  std::vector<Hyperrectangle> out;
  for_each_leaf_rect(p, [&](std::span<const std::uint64_t> masks, int label) {
    Hyperrectangle r;
    r.label = label;
    for (std::uint64_t m : masks) {
      PointSet s(p.n);
      std::uint64_t rest = m;
      while (rest) {
        int x = std::countr_zero(rest);
        rest &= rest - 1;
        s.add(static_cast<std::uint32_t>(x));
      }
      r.sides.push_back(std::move(s));
    }
    out.push_back(std::move(r));
  });
  return out;
}

RectValue rect_value(const BoolFn& f, const Hyperrectangle& r) {
  if (r.sides.empty()) fail(ErrorCode::invalid_argument, "rect_value: no sides");
  PointSet acc = r.sides[0];
  for (std::size_t i = 1; i < r.sides.size(); ++i) acc = sum_sets(acc, r.sides[i]);
  bool saw0 = false, saw1 = false;
  for (std::uint32_t x : acc.points()) (f.eval(x) ? saw1 : saw0) = true;
  if (saw0 && saw1) return RectValue::mixed;
  return saw1 ? RectValue::one : RectValue::zero;
}

// ---------------------------------------------------------------------------
// pipeline
// ---------------------------------------------------------------------------

PipelineResult mono_affine_from_protocol(const BoolFn& f, const Protocol& p, int oracle_max_n) {
  if (p.k != 4) fail(ErrorCode::invalid_argument, "mono_affine_from_protocol: needs k = 4");
  if (p.n != f.n()) fail(ErrorCode::dimension_mismatch, "mono_affine_from_protocol: n differs");
  check_rect_caps(p);

  // max-volume leaf rectangle, first in transcript order on ties
  std::array<std::uint64_t, 4> best{};
  std::uint64_t best_volume = 0;
  int best_label = 0;
  for_each_leaf_rect(p, [&](std::span<const std::uint64_t> masks, int label) {
    std::uint64_t volume = 1;
    for (std::uint64_t m : masks) volume *= static_cast<std::uint64_t>(std::popcount(m));
    if (volume > best_volume) {
      best_volume = volume;
      for (int i = 0; i < 4; ++i) best[static_cast<std::size_t>(i)] = masks[i];
      best_label = label;
    }
  });
  if (best_volume == 0)
    fail(ErrorCode::empty_intermediate, "mono_affine_from_protocol: no nonempty leaf");

  std::array<PointSet, 4> sides{PointSet(p.n), PointSet(p.n), PointSet(p.n), PointSet(p.n)};
  for (int i = 0; i < 4; ++i) {
    std::uint64_t rest = best[static_cast<std::size_t>(i)];
    while (rest) {
      int x = std::countr_zero(rest);
      rest &= rest - 1;
      sides[static_cast<std::size_t>(i)].add(static_cast<std::uint32_t>(x));
    }
  }

  PipelineResult out;
  for (int i = 0; i < 4; ++i) out.side_sizes[static_cast<std::size_t>(i)] = sides[i].size();
  out.leaf_volume = best_volume;
  out.leaf_label = best_label;

  BrWitness br = br_intersect(sides[0], sides[1], sides[2], sides[3]);
  out.shift_a = br.a;
  out.shift_a_prime = br.a_prime;
  out.shift_a_dblprime = br.a_dblprime;
  out.core_size = br.core.size();

  PointSet four_core = iterated_sumset(br.core, 4);
  AffineSubspace v0 = max_affine_subspace_in(four_core, oracle_max_n);
  AffineSubspace v = AffineSubspace::span_rref(p.n, v0.basis(),
                                               v0.offset() ^ br.a ^ br.a_prime);
  out.codim_v = v.codim();

  PointSet sigma = sum_sets(sum_sets(sides[0], sides[1]), sum_sets(sides[2], sides[3]));
  out.containment_ok = true;
  out.mono_ok = true;
  auto pts = coset_points(v);
  const int v0_label = f.eval(pts[0]);
  for (std::uint32_t x : pts) {
    if (!sigma.contains(x)) out.containment_ok = false;
    if (f.eval(x) != v0_label) out.mono_ok = false;
  }
  out.v = std::move(v);
  return out;
}

// ---------------------------------------------------------------------------
// protocol restriction
// ---------------------------------------------------------------------------

Protocol restrict_protocol(const Protocol& p, const AffineMap& l) {
  if (l.n != p.n) fail(ErrorCode::dimension_mismatch, "restrict_protocol: map target differs");
  if (l.t < 1) fail(ErrorCode::invalid_argument, "restrict_protocol: per-player input needs t >= 1");

  Protocol out;
  out.k = p.k;
  out.n = l.t;
  out.root = p.root;
  out.nodes = p.nodes;

  // linear part applied to every z, shared by all messages
  const std::uint64_t t_size = 1ull << l.t;
  std::vector<std::uint32_t> linear(t_size);
  linear[0] = 0;
  std::size_t have = 1;
  for (int j = 0; j < l.t; ++j) {
    for (std::size_t i = 0; i < have; ++i) linear[have + i] = linear[i] ^ l.columns[j];
    have *= 2;
  }

  // message rewrite depends on whether the speaker is player 1 (offset b)
  std::map<std::pair<std::int32_t, bool>, std::int32_t> rewritten;
  auto rewrite = [&](std::int32_t mid, bool with_offset) {
    auto key = std::make_pair(mid, with_offset);
    if (auto it = rewritten.find(key); it != rewritten.end()) return it->second;
    const Message& old = p.pool[static_cast<std::size_t>(mid)];
    Message next;
    if (old.is_form) {
      std::uint32_t q = 0;
      for (int j = 0; j < l.t; ++j)
        if (parity32(old.mask & l.columns[j])) q |= 1u << j;
      int delta = with_offset ? parity32(old.mask & l.b) : 0;
      if (delta == 0) {
        next.is_form = true;
        next.mask = q;
      } else {
        next.is_form = false;
        next.table = BitVec(t_size);
        for (std::uint64_t z = 0; z < t_size; ++z)
          next.table.set(z, parity32(q & static_cast<std::uint32_t>(z)) ^ 1);
      }
    } else {
      next.is_form = false;
      next.table = BitVec(t_size);
      const std::uint32_t add = with_offset ? l.b : 0;
      for (std::uint64_t z = 0; z < t_size; ++z)
        next.table.set(z, old.table.get(linear[z] ^ add));
    }
    out.pool.push_back(std::move(next));
    std::int32_t id = static_cast<std::int32_t>(out.pool.size() - 1);
    rewritten.emplace(key, id);
    return id;
  };

  for (auto& node : out.nodes) {
    if (node.is_leaf()) continue;
    node.msg = rewrite(node.msg, node.speaker == 0);
  }
  return out;
}

// ---------------------------------------------------------------------------
// communication matrix rank
// ---------------------------------------------------------------------------

CommMatrix comm_matrix(const BoolFn& f) { return CommMatrix{f.n(), f}; }

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<__uint128_t>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

bool is_prime_u64(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (v % q == 0) return v == q;
  }
  std::uint64_t d = v - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a % v, d, v);
    if (x == 1 || x == v - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, v);
      if (x == v - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::uint64_t random_prime_61(Rng& rng) {
  for (;;) {
    std::uint64_t v = (rng.next() & ((1ull << 61) - 1)) | (1ull << 60) | 1ull;
    if (is_prime_u64(v)) return v;
  }
}

int rank_mod_p(const CommMatrix& m, std::uint64_t p) {
  const std::size_t size = static_cast<std::size_t>(m.rows());
  std::vector<std::vector<std::uint64_t>> a(size, std::vector<std::uint64_t>(size));
  for (std::size_t x = 0; x < size; ++x)
    for (std::size_t y = 0; y < size; ++y)
      a[x][y] = static_cast<std::uint64_t>(m.at(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y)));

  int rank = 0;
  for (std::size_t col = 0; col < size && rank < static_cast<int>(size); ++col) {
    std::size_t pivot = size;
    for (std::size_t r = static_cast<std::size_t>(rank); r < size; ++r) {
      if (a[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot == size) continue;
    std::swap(a[static_cast<std::size_t>(rank)], a[pivot]);
    const std::uint64_t inv = powmod(a[static_cast<std::size_t>(rank)][col], p - 2, p);
    auto& prow = a[static_cast<std::size_t>(rank)];
    for (std::size_t c = col; c < size; ++c) prow[c] = mulmod(prow[c], inv, p);
    for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < size; ++r) {
      const std::uint64_t factor = a[r][col];
      if (!factor) continue;
      for (std::size_t c = col; c < size; ++c) {
        std::uint64_t sub = mulmod(factor, prow[c], p);
        a[r][c] = (a[r][c] + p - sub) % p;
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace

RankResult comm_matrix_rank(const BoolFn& f, std::uint64_t seed, int max_n) {
  if (f.n() > max_n)
    fail(ErrorCode::cap_exceeded, "comm_matrix_rank: n = " + std::to_string(f.n()) +
                                      " exceeds cap " + std::to_string(max_n));
  CommMatrix m = comm_matrix(f);
  Rng rng(seed);
  std::uint64_t p1 = random_prime_61(rng);
  std::uint64_t p2 = random_prime_61(rng);
  while (p2 == p1) p2 = random_prime_61(rng);
  int r1 = rank_mod_p(m, p1);
  int r2 = rank_mod_p(m, p2);
  if (r1 == r2) return {std::move(m), r1};
  // rank mod p never exceeds the rational rank, so the larger value wins if
  // a third prime confirms it
  std::uint64_t p3 = random_prime_61(rng);
  while (p3 == p1 || p3 == p2) p3 = random_prime_61(rng);
  int r3 = rank_mod_p(m, p3);
  if (r3 == std::max(r1, r2)) return {std::move(m), r3};
  fail(ErrorCode::prime_disagreement, "comm_matrix_rank: three primes disagree on the rank");
}

// ---------------------------------------------------------------------------
// exact 2-party communication complexity
// ---------------------------------------------------------------------------

BitMatrix BitMatrix::from(const CommMatrix& m) {
  BitMatrix b;
  b.rows = static_cast<int>(m.rows());
  b.cols = b.rows;
  b.row_bits.resize(static_cast<std::size_t>(b.rows));
  for (int r = 0; r < b.rows; ++r) {
    std::uint32_t bits = 0;
    for (int c = 0; c < b.cols; ++c)
      bits |= static_cast<std::uint32_t>(m.at(static_cast<std::uint32_t>(r),
                                              static_cast<std::uint32_t>(c)))
              << c;
    b.row_bits[static_cast<std::size_t>(r)] = bits;
  }
  return b;
}

namespace {

struct Cc2Solver {
  const BitMatrix& m;
  int cols_bits;
  std::vector<std::int8_t> memo;

  explicit Cc2Solver(const BitMatrix& matrix) : m(matrix), cols_bits(matrix.cols) {
    memo.assign(1ull << (m.rows + m.cols), -1);
  }

  bool monochromatic(std::uint32_t rowset, std::uint32_t colset) const {
    bool all0 = true, all1 = true;
    std::uint32_t rest = rowset;
    while (rest) {
      int r = std::countr_zero(rest);
      rest &= rest - 1;
      std::uint32_t row = m.row_bits[static_cast<std::size_t>(r)] & colset;
      if (row != 0) all0 = false;
      if (row != colset) all1 = false;
      if (!all0 && !all1) return false;
    }
    return true;
  }

  int solve(std::uint32_t rowset, std::uint32_t colset) {
    std::size_t key = (static_cast<std::size_t>(rowset) << cols_bits) | colset;
    if (memo[key] >= 0) return memo[key];
    if (monochromatic(rowset, colset)) return memo[key] = 0;

    int best = std::numeric_limits<int>::max();
    // splits of the row set; anchor the lowest row to count each pair once
    for (int side = 0; side < 2; ++side) {
      std::uint32_t set = side == 0 ? rowset : colset;
      std::uint32_t anchor = set & (~set + 1u);
      std::uint32_t rest = set ^ anchor;
      // sub iterates proper submasks of rest; part = anchor | sub
      for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
        std::uint32_t part = anchor | sub;
        std::uint32_t other = set ^ part;
        if (other != 0) {
          int c = side == 0 ? std::max(solve(part, colset), solve(other, colset))
                            : std::max(solve(rowset, part), solve(rowset, other));
          best = std::min(best, 1 + c);
        }
        if (sub == 0) break;
      }
    }
    return memo[key] = static_cast<std::int8_t>(best);
  }
};

}  // namespace

int cc2_exact(const BitMatrix& m) {
  if (m.rows < 1 || m.cols < 1) fail(ErrorCode::invalid_argument, "cc2_exact: empty matrix");
  if (m.rows + m.cols > 16)
    fail(ErrorCode::cap_exceeded, "cc2_exact capped at rows + cols <= 16");
  Cc2Solver solver(m);
  std::uint32_t rowset = (m.rows == 32) ? ~0u : ((1u << m.rows) - 1);
  std::uint32_t colset = (m.cols == 32) ? ~0u : ((1u << m.cols) - 1);
  return solver.solve(rowset, colset);
}

int cc2_exact(const CommMatrix& m) { return cc2_exact(BitMatrix::from(m)); }

}  // namespace xorlab
