#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "xorlab/boolfn.hpp"
#include "xorlab/gf2core.hpp"

namespace xorlab {

/// Binary tree of nonzero linear-form queries with bit-labeled leaves.
/// Along every root-to-leaf path the query forms are linearly independent
/// (both builders guarantee it), so depth never exceeds n.
class ParityDecisionTree {
 public:
  struct Node {
    std::uint32_t query = 0;  // nonzero for internal nodes
    std::int32_t child0 = -1;
    std::int32_t child1 = -1;
    std::int8_t leaf = -1;  // >= 0: leaf with this label

    bool is_leaf() const { return leaf >= 0; }
  };

  ParityDecisionTree() = default;
  static ParityDecisionTree make_leaf(int n, int label);

  int n() const { return n_; }
  std::int32_t root() const { return root_; }
  const std::vector<Node>& nodes() const { return nodes_; }

  std::int32_t add_leaf(int label);
  std::int32_t add_query(std::uint32_t mask, std::int32_t child0, std::int32_t child1);
  void set_root(std::int32_t r) { root_ = r; }
  void set_n(int n) {
    check_dim(n);
    n_ = n;
  }

  int depth() const;

  friend bool operator==(const ParityDecisionTree&, const ParityDecisionTree&) = default;

 private:
  int n_ = 1;
  std::int32_t root_ = -1;
  std::vector<Node> nodes_;
};

int eval_pdt(const ParityDecisionTree& t, std::uint32_t x);
int eval_pdt(const ParityDecisionTree& t, const Vec2& x);

struct PdtExactResult {
  int depth = 0;
  ParityDecisionTree tree;
};

/// Exact PDT complexity by memoized minimax over restricted truth tables.
/// Ties: smallest query mask, branch 0 first. Capped (default n <= 6).
PdtExactResult pdt_exact(const BoolFn& f, int max_n = 6);

/// A monochromatic coset certificate: x lies in h and f is constant on h.
struct CertWitness {
  std::uint32_t x = 0;
  AffineSubspace h;
  int codim = 0;
};

/// Minimum-codim monochromatic coset containing x, by enumerating canonical
/// constraint spaces of codim 0, 1, 2, ... (first hit wins). Default cap n <= 8.
CertWitness pcert(const BoolFn& f, std::uint32_t x, int max_n = 8);

struct MinpcertResult {
  int codim = 0;
  CertWitness witness;
};

/// min over x of pcert(f, x), sharing the constraint-space enumeration.
MinpcertResult minpcert(const BoolFn& f, int max_n = 8);

/// Certificate-driven builder: query the minpcert witness constraints in
/// order; the all-consistent path ends in a leaf with the certificate value
/// and every divergent answer recurses on the restricted subfunction.
ParityDecisionTree greedy_pdt(const BoolFn& f, int max_n = 8);

/// Canonical enumeration of all d-dimensional linear subspaces of F2^n by
/// greedy basis (v1 < ... < vd, each the minimum of its coset). The visitor
/// returns true to stop. Returns true if stopped early.
bool for_each_subspace_basis(int n, int d,
                             const std::function<bool(std::span<const std::uint32_t>)>& visit);

}  // namespace xorlab
