#include "xorlab/pdt.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <unordered_map>

namespace xorlab {

ParityDecisionTree ParityDecisionTree::make_leaf(int n, int label) {
  ParityDecisionTree t;
  t.set_n(n);
  t.set_root(t.add_leaf(label));
  return t;
}

std::int32_t ParityDecisionTree::add_leaf(int label) {
  Node node;
  node.leaf = static_cast<std::int8_t>(label != 0);
  nodes_.push_back(node);
  return static_cast<std::int32_t>(nodes_.size() - 1);
}

std::int32_t ParityDecisionTree::add_query(std::uint32_t mask, std::int32_t child0,
                                           std::int32_t child1) {
  if (mask == 0) fail(ErrorCode::malformed_tree, "PDT query form must be nonzero");
  Node node;
  node.query = mask;
  node.child0 = child0;
  node.child1 = child1;
  nodes_.push_back(node);
  return static_cast<std::int32_t>(nodes_.size() - 1);
}

namespace {

int depth_below(const std::vector<ParityDecisionTree::Node>& nodes, std::int32_t id) {
  const auto& node = nodes[static_cast<std::size_t>(id)];
  if (node.is_leaf()) return 0;
  return 1 + std::max(depth_below(nodes, node.child0), depth_below(nodes, node.child1));
}

}  // namespace

int ParityDecisionTree::depth() const {
  if (root_ < 0) fail(ErrorCode::malformed_tree, "PDT has no root");
  return depth_below(nodes_, root_);
}

int eval_pdt(const ParityDecisionTree& t, std::uint32_t x) {
  std::int32_t id = t.root();
  if (id < 0) fail(ErrorCode::malformed_tree, "PDT has no root");
  for (;;) {
    const auto& node = t.nodes()[static_cast<std::size_t>(id)];
    if (node.is_leaf()) return node.leaf;
    if (node.query == 0) fail(ErrorCode::malformed_tree, "PDT query form is zero");
    id = parity32(node.query & x) ? node.child1 : node.child0;
    if (id < 0) fail(ErrorCode::malformed_tree, "PDT child missing");
  }
}

int eval_pdt(const ParityDecisionTree& t, const Vec2& x) {
  if (x.n != t.n()) fail(ErrorCode::dimension_mismatch, "eval_pdt: point dimension differs");
  return eval_pdt(t, x.bits);
}

// ---------------------------------------------------------------------------
// exact solver
// ---------------------------------------------------------------------------

namespace {

// Truth table of a subfunction on t variables, bit-packed.
struct SubTable {
  int t = 0;
  std::vector<std::uint64_t> w;

  static SubTable of(const BoolFn& f) {
    SubTable s;
    s.t = f.n();
    s.w = f.table().words();
    return s;
  }

  std::uint64_t bits() const { return 1ull << t; }

  int get(std::uint32_t x) const { return (w[x >> 6] >> (x & 63)) & 1; }

  bool constant(int* value) const {
    std::uint64_t full = (t >= 6) ? ~0ull : ((1ull << bits()) - 1);
    bool all0 = true, all1 = true;
    for (std::size_t i = 0; i < w.size(); ++i) {
      std::uint64_t expect = (t >= 6 && i + 1 == w.size()) ? ~0ull : full;
      if (w[i] != 0) all0 = false;
      if (w[i] != expect) all1 = false;
    }
    if (all0) *value = 0;
    if (all1) *value = 1;
    return all0 || all1;
  }

  std::string key() const {
    std::string k;
    k.reserve(1 + w.size() * 8);
    k.push_back(static_cast<char>(t));
    for (std::uint64_t word : w)
      for (int b = 0; b < 8; ++b) k.push_back(static_cast<char>((word >> (8 * b)) & 0xff));
    return k;
  }
};

// s-dependent coordinate change: pivot on the highest set bit p of s, keep
// the other coordinates in ascending order (this matches the canonical
// parametrization of the hyperplane s.z = b).
SubTable restrict_along(const SubTable& in, std::uint32_t s, int b) {
  const int p = 31 - std::countl_zero(s);
  SubTable out;
  out.t = in.t - 1;
  out.w.assign((out.bits() + 63) / 64, 0);
  const std::uint32_t low = (1u << p) - 1;
  for (std::uint32_t zr = 0; zr < out.bits(); ++zr) {
    std::uint32_t z0 = (zr & low) | ((zr & ~low) << 1);
    std::uint32_t bit = static_cast<std::uint32_t>(b ^ parity32(s & z0));
    std::uint32_t z = z0 | (bit << p);
    if (in.get(z)) out.w[zr >> 6] |= 1ull << (zr & 63);
  }
  return out;
}

struct ExactSolver {
  struct Entry {
    int depth;
    std::uint32_t best_query;
  };
  std::unordered_map<std::string, Entry> memo;

  Entry solve(const SubTable& tab) {
    int value;
    if (tab.constant(&value)) return {0, 0};
    std::string key = tab.key();
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    Entry best{std::numeric_limits<int>::max(), 0};
    const std::uint32_t forms = static_cast<std::uint32_t>(tab.bits());
    for (std::uint32_t s = 1; s < forms; ++s) {
      int d0 = solve(restrict_along(tab, s, 0)).depth;
      int d1 = solve(restrict_along(tab, s, 1)).depth;
      int d = 1 + std::max(d0, d1);
      if (d < best.depth) best = {d, s};
      if (best.depth == 1) break;  // non-constant functions cannot do better
    }
    memo.emplace(std::move(key), best);
    return best;
  }

  // Rebuild an optimal tree in the subfunction's own coordinates.
  ParityDecisionTree build(const SubTable& tab) {
    int value;
    if (tab.constant(&value)) return ParityDecisionTree::make_leaf(std::max(tab.t, 1), value);
    Entry e = solve(tab);
    const std::uint32_t s = e.best_query;
    const int p = 31 - std::countl_zero(s);
    ParityDecisionTree sub0 = build(restrict_along(tab, s, 0));
    ParityDecisionTree sub1 = build(restrict_along(tab, s, 1));
    ParityDecisionTree out;
    out.set_n(std::max(tab.t, 1));
    std::int32_t r0 = append_lifted(out, sub0, p);
    std::int32_t r1 = append_lifted(out, sub1, p);
    out.set_root(out.add_query(s, r0, r1));
    return out;
  }

  // Copy sub into out with every query widened by a zero bit at position p.
  static std::int32_t append_lifted(ParityDecisionTree& out, const ParityDecisionTree& sub,
                                    int p) {
    const std::uint32_t low = (1u << p) - 1;
    std::vector<std::int32_t> remap(sub.nodes().size());
    for (std::size_t i = 0; i < sub.nodes().size(); ++i) {
      const auto& node = sub.nodes()[i];
      if (node.is_leaf()) {
        remap[i] = out.add_leaf(node.leaf);
      } else {
        std::uint32_t lifted = (node.query & low) | ((node.query & ~low) << 1);
        remap[i] = out.add_query(lifted, remap[static_cast<std::size_t>(node.child0)],
                                 remap[static_cast<std::size_t>(node.child1)]);
      }
    }
    return remap[static_cast<std::size_t>(sub.root())];
  }
};

}  // namespace

PdtExactResult pdt_exact(const BoolFn& f, int max_n) {
  if (f.n() > max_n)
    fail(ErrorCode::cap_exceeded, "pdt_exact: n = " + std::to_string(f.n()) + " exceeds cap " +
                                      std::to_string(max_n));
  ExactSolver solver;
  SubTable tab = SubTable::of(f);
  auto entry = solver.solve(tab);
  ParityDecisionTree tree = solver.build(tab);
  return {entry.depth, std::move(tree)};
}

// ---------------------------------------------------------------------------
// parity certificates
// ---------------------------------------------------------------------------

bool for_each_subspace_basis(int n, int d,
                             const std::function<bool(std::span<const std::uint32_t>)>& visit) {
  check_dim(n);
  if (d < 0 || d > n) fail(ErrorCode::invalid_argument, "for_each_subspace_basis: bad dimension");
  std::vector<std::uint32_t> chain;
  std::vector<std::uint32_t> span{0};
  std::vector<std::uint32_t> msb_stack{0};  // OR of top set bits of span \ {0}
  const std::uint32_t universe = 1u << n;

  // v extends canonically iff v has a zero at the top bit of every current
  // span element, i.e. (v & msb_mask) == 0.
  std::function<bool(std::uint32_t)> rec = [&](std::uint32_t last) -> bool {
    if (static_cast<int>(chain.size()) == d) return visit(chain);
    const int remaining = d - static_cast<int>(chain.size());
    for (std::uint32_t v = last + 1; v + (static_cast<std::uint32_t>(remaining) - 1) < universe;
         ++v) {
      if (v & msb_stack.back()) continue;
      const std::size_t old = span.size();
      std::uint32_t msb = msb_stack.back();
      for (std::size_t i = 0; i < old; ++i) {
        std::uint32_t e = span[i] ^ v;
        span.push_back(e);
        msb |= 1u << (31 - std::countl_zero(e));
      }
      chain.push_back(v);
      msb_stack.push_back(msb);
      bool stop = rec(v);
      msb_stack.pop_back();
      chain.pop_back();
      span.resize(old);
      if (stop) return true;
    }
    return false;
  };
  return rec(0);
}

namespace {

// Shared scratch for coset scans: stamp-based visited marks.
struct CosetScan {
  std::vector<std::uint32_t> stamp;
  std::uint32_t epoch = 0;

  void reset(std::uint64_t universe) {
    if (stamp.size() != universe) stamp.assign(universe, 0);
    ++epoch;
  }
};

// f restricted to rep ^ H0 is constant? H0 given by its points.
bool coset_monochromatic(const BoolFn& f, std::uint32_t rep,
                         const std::vector<std::uint32_t>& h0_points) {
  const int v0 = f.eval(rep ^ h0_points[0]);
  for (std::uint32_t p : h0_points)
    if (f.eval(rep ^ p) != v0) return false;
  return true;
}

std::vector<std::uint32_t> points_of_basis(const std::vector<std::uint32_t>& basis) {
  std::vector<std::uint32_t> pts(1ull << basis.size());
  pts[0] = 0;
  std::size_t have = 1;
  for (std::uint32_t b : basis) {
    for (std::size_t i = 0; i < have; ++i) pts[have + i] = pts[i] ^ b;
    have *= 2;
  }
  return pts;
}

struct CertSearchHit {
  std::vector<std::uint32_t> forms;
  std::uint32_t rep = 0;
};

}  // namespace

MinpcertResult minpcert(const BoolFn& f, int max_n) {
  const int n = f.n();
  if (n > max_n)
    fail(ErrorCode::cap_exceeded, "minpcert: n = " + std::to_string(n) + " exceeds cap " +
                                      std::to_string(max_n));
  CosetScan scan;
  for (int c = 0; c <= n; ++c) {
    CertSearchHit hit;
    bool found = for_each_subspace_basis(n, c, [&](std::span<const std::uint32_t> forms) {
      std::vector<std::uint32_t> fvec(forms.begin(), forms.end());
      auto h0 = points_of_basis(nullspace(fvec, n));
      scan.reset(f.domain_size());
      for (std::uint32_t rep = 0; rep < f.domain_size(); ++rep) {
        if (scan.stamp[rep] == scan.epoch) continue;
        for (std::uint32_t p : h0) scan.stamp[rep ^ p] = scan.epoch;
        if (coset_monochromatic(f, rep, h0)) {
          hit = {std::move(fvec), rep};
          return true;
        }
      }
      return false;
    });
    if (found) {
      AffineSubspace h = AffineSubspace::span_rref(n, nullspace(hit.forms, n), hit.rep);
      return {c, CertWitness{hit.rep, std::move(h), c}};
    }
  }
  fail(ErrorCode::invalid_argument, "minpcert: unreachable (full codim always certifies)");
}

CertWitness pcert(const BoolFn& f, std::uint32_t x, int max_n) {
  const int n = f.n();
  if (n > max_n)
    fail(ErrorCode::cap_exceeded,
         "pcert: n = " + std::to_string(n) + " exceeds cap " + std::to_string(max_n));
  if (x >= f.domain_size()) fail(ErrorCode::mask_overflow, "pcert: point >= 2^n");
  for (int c = 0; c <= n; ++c) {
    CertSearchHit hit;
    bool found = for_each_subspace_basis(n, c, [&](std::span<const std::uint32_t> forms) {
      std::vector<std::uint32_t> fvec(forms.begin(), forms.end());
      auto h0 = points_of_basis(nullspace(fvec, n));
      if (coset_monochromatic(f, x, h0)) {
        hit = {std::move(fvec), x};
        return true;
      }
      return false;
    });
    if (found) {
      AffineSubspace h = AffineSubspace::span_rref(n, nullspace(hit.forms, n), x);
      return CertWitness{x, std::move(h), c};
    }
  }
  fail(ErrorCode::invalid_argument, "pcert: unreachable (the singleton coset certifies)");
}

// ---------------------------------------------------------------------------
// greedy certificate-driven builder
// ---------------------------------------------------------------------------

namespace {

// Copy sub (a tree over dim(v) coordinates) into out, pulling every query
// back through v's parametrization.
std::int32_t append_lifted_through(ParityDecisionTree& out, const ParityDecisionTree& sub,
                                   const AffineSubspace& v) {
  std::vector<std::int32_t> remap(sub.nodes().size());
  for (std::size_t i = 0; i < sub.nodes().size(); ++i) {
    const auto& node = sub.nodes()[i];
    if (node.is_leaf()) {
      remap[i] = out.add_leaf(node.leaf);
    } else {
      remap[i] = out.add_query(lift_form_through(v, node.query),
                               remap[static_cast<std::size_t>(node.child0)],
                               remap[static_cast<std::size_t>(node.child1)]);
    }
  }
  return remap[static_cast<std::size_t>(sub.root())];
}

ParityDecisionTree build_greedy(const BoolFn& g) {
  const int t = g.n();
  if (g.is_constant()) return ParityDecisionTree::make_leaf(t, g.eval(0));

  MinpcertResult mp = minpcert(g, t);
  std::vector<Constraint> cons = constraints_of(mp.witness.h);
  ParityDecisionTree out;
  out.set_n(t);
  std::int32_t consistent = out.add_leaf(g.eval(mp.witness.x));
  for (int j = static_cast<int>(cons.size()) - 1; j >= 0; --j) {
    std::vector<Constraint> divergent(cons.begin(), cons.begin() + j);
    divergent.push_back({cons[j].form, cons[j].rhs ^ 1});
    AffineSubspace vdiv = from_constraints(t, divergent).value();
    ParityDecisionTree subtree = build_greedy(restrict_affine(g, vdiv));
    std::int32_t div_root = append_lifted_through(out, subtree, vdiv);
    std::int32_t c0 = (cons[j].rhs == 0) ? consistent : div_root;
    std::int32_t c1 = (cons[j].rhs == 1) ? consistent : div_root;
    consistent = out.add_query(cons[j].form, c0, c1);
  }
  out.set_root(consistent);
  return out;
}

}  // namespace

ParityDecisionTree greedy_pdt(const BoolFn& f, int max_n) {
  if (f.n() > max_n)
    fail(ErrorCode::cap_exceeded, "greedy_pdt: n = " + std::to_string(f.n()) + " exceeds cap " +
                                      std::to_string(max_n));
  return build_greedy(f);
}

}  // namespace xorlab
