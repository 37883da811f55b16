#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "xorlab/boolfn.hpp"
#include "xorlab/gf2core.hpp"
#include "xorlab/pdt.hpp"
#include "xorlab/sumset.hpp"

namespace xorlab {

// A message is a function of the speaker's own input: a linear form over
// the speaker's n bits, or an explicit 2^n-bit table.
struct Message {
  bool is_form = true;
  std::uint32_t mask = 0;
  BitVec table;

  int eval(std::uint32_t x) const {
    return is_form ? parity32(mask & x) : static_cast<int>(table.get(x));
  }

  friend bool operator==(const Message&, const Message&) = default;
};

/// Deterministic k-party number-in-hand blackboard protocol. Nodes form a
/// tree of broadcast bits; node identity encodes the transcript prefix, so
/// a message may only read the speaker's own input. Structurally identical
/// subtrees may be stored once (builders reuse them); the leaf/rectangle
/// semantics are per root-to-leaf path, which matches the fully expanded
/// tree that serialization emits.
class Protocol {
 public:
  struct Node {
    std::int32_t child0 = -1;
    std::int32_t child1 = -1;
    std::int32_t msg = -1;  // pool index; -1 on leaves
    std::int8_t leaf = -1;  // >= 0: leaf with this output
    std::uint8_t speaker = 0;  // 0-based player index

    bool is_leaf() const { return leaf >= 0; }
  };

  int k = 2;
  int n = 1;
  std::int32_t root = -1;
  std::vector<Node> nodes;
  std::vector<Message> pool;

  int cost() const;  // max root-to-leaf depth in bits
};

/// Broadcast simulation of a PDT: for each query s, players 1..k in order
/// announce s.x_i; the XOR of the k bits answers the query on x_1^...^x_k.
/// cost = k * depth(t) by construction.
Protocol simulate_pdt_protocol(const ParityDecisionTree& t, int k);

struct RunResult {
  std::string transcript;  // '0'/'1' per broadcast bit
  int output = 0;
};

RunResult run_protocol(const Protocol& p, std::span<const std::uint32_t> inputs);

enum class RectValue { zero, one, mixed };

/// Product set A_1 x ... x A_k of inputs consistent with one leaf path.
/// label is the protocol's output at that leaf; rect_value computes the
/// true color from f.
struct Hyperrectangle {
  std::vector<PointSet> sides;
  int label = 0;
};

/// One rectangle per root-to-leaf path with all sides nonempty; together
/// they partition the input domain. Capped: k <= 4 and k*n <= 24, and the
/// number of paths must stay enumerable.
std::vector<Hyperrectangle> leaf_rectangles(const Protocol& p,
                                            std::uint64_t max_paths = 1u << 20);

/// Streaming form: visits (per-player membership masks, leaf label) for
/// every nonempty leaf path in transcript order. Masks hold 2^n bits each,
/// so this requires n <= 6 (implied by the k*n <= 24 cap with k >= 4).
void for_each_leaf_rect(const Protocol& p,
                        const std::function<void(std::span<const std::uint64_t>, int)>& visit);

RectValue rect_value(const BoolFn& f, const Hyperrectangle& r);

struct PipelineResult {
  std::array<std::uint64_t, 4> side_sizes{};
  std::uint64_t leaf_volume = 0;
  int leaf_label = 0;
  std::uint32_t shift_a = 0;
  std::uint32_t shift_a_prime = 0;
  std::uint32_t shift_a_dblprime = 0;
  std::uint64_t core_size = 0;
  AffineSubspace v;  // the returned coset, already translated by a ^ a'
  int codim_v = 0;
  bool containment_ok = false;  // every point of v lies in A1+A2+A3+A4
  bool mono_ok = false;         // f is constant on v
};

/// Rectangle-to-monochromatic-coset pipeline for a correct 4-party protocol:
/// pick the max-volume leaf rectangle (first in transcript order on ties),
/// run the shift-intersection, take the largest affine subspace inside the
/// 4-fold sumset of the core, and translate it by a ^ a'. Both verification
/// flags are the result of explicit point-by-point checks.
PipelineResult mono_affine_from_protocol(const BoolFn& f, const Protocol& p,
                                         int oracle_max_n = 14);

/// Players run p on affinely mapped inputs: player 1 sends through z -> Az+b,
/// everyone else through z -> Az, so the XOR of the mapped inputs is L of the
/// XOR. Same tree, rewritten messages; cost is unchanged.
Protocol restrict_protocol(const Protocol& p, const AffineMap& l);

/// 2^n x 2^n matrix M[x][y] = f(x ^ y), stored through f.
struct CommMatrix {
  int n = 1;
  BoolFn f;

  int at(std::uint32_t x, std::uint32_t y) const { return f.eval(x ^ y); }
  std::uint64_t rows() const { return 1ull << n; }
};

CommMatrix comm_matrix(const BoolFn& f);

struct RankResult {
  CommMatrix m;
  int rank = 0;
};

/// Rank of M_F over the rationals via elimination modulo two (on
/// disagreement, three) random 61-bit primes drawn from the seed.
RankResult comm_matrix_rank(const BoolFn& f, std::uint64_t seed = 0x9e3779b97f4a7c15ull,
                            int max_n = 10);

/// Dense 0/1 matrix small enough for the (rowset, colset) DP.
struct BitMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::uint32_t> row_bits;

  static BitMatrix from(const CommMatrix& m);
  int at(int r, int c) const { return (row_bits[static_cast<std::size_t>(r)] >> c) & 1; }
};

/// Exact deterministic 2-party communication complexity of a 0/1 matrix:
/// cc(R) = 0 on monochromatic R, else 1 + the best split of either side's
/// index set. The leaf label is the output and costs no bits.
/// Capped at rows + cols <= 16.
int cc2_exact(const BitMatrix& m);
int cc2_exact(const CommMatrix& m);

}  // namespace xorlab
