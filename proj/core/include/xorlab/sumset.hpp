#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "xorlab/boolfn.hpp"
#include "xorlab/gf2core.hpp"

namespace xorlab {

/// Arbitrary subset of F2^n as a 2^n-bit membership table.
class PointSet {
 public:
  explicit PointSet(int n) : n_(checked(n)), bits_(1ull << n) {}
  static PointSet full(int n);
  static PointSet from_points(int n, std::span<const std::uint32_t> pts);

  int n() const { return n_; }
  std::uint64_t universe() const { return 1ull << n_; }
  std::uint64_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  double density() const { return static_cast<double>(size_) / static_cast<double>(universe()); }
  bool contains(std::uint32_t x) const { return bits_.get(x); }

  void add(std::uint32_t x) {
    if (!bits_.get(x)) {
      bits_.set(x, true);
      ++size_;
    }
  }
  void remove(std::uint32_t x) {
    if (bits_.get(x)) {
      bits_.set(x, false);
      --size_;
    }
  }

  const BitVec& bits() const { return bits_; }
  std::vector<std::uint32_t> points() const;  // ascending

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  static int checked(int n) {
    check_dim(n);
    return n;
  }

  int n_;
  BitVec bits_;
  std::uint64_t size_ = 0;
};

PointSet intersect_sets(const PointSet& a, const PointSet& b);
PointSet shift_set(const PointSet& a, std::uint32_t by);

/// Exact sumset {a ^ b}; the sum with an empty set is empty.
PointSet sum_sets(const PointSet& a, const PointSet& b);
PointSet iterated_sumset(const PointSet& a, int t);

/// Counts c[z] = #{(a,b) in A x B : a ^ b = z}, via the integer Walsh
/// transform of the indicators (exact; capped at n <= 20 so intermediate
/// values stay within int64).
std::vector<std::int64_t> xor_convolution_counts(const PointSet& a, const PointSet& b);

struct ShiftResult {
  std::uint32_t shift = 0;
  std::uint64_t count = 0;
};

/// The shift maximizing |A n (B + a)| (smallest shift on ties); count is
/// exact and at least ceil(|A| |B| / 2^n) by pigeonhole.
ShiftResult best_shift(const PointSet& a, const PointSet& b);

// Shift-intersection of four dense sets: align A2 to A1 and A4 to A3 by
// their best shifts, then align the two intersections. The core then
// satisfies core ^4 + a + a' subset A1+A2+A3+A4, and |core| >= 2^{n-4c}
// whenever every |A_i| >= 2^{n-c}.
struct BrWitness {
  std::uint32_t a = 0;
  std::uint32_t a_prime = 0;
  std::uint32_t a_dblprime = 0;
  PointSet core;
  std::uint64_t pair_count_12 = 0;
  std::uint64_t pair_count_34 = 0;
  std::uint64_t pair_count_4way = 0;
};

BrWitness br_intersect(const PointSet& a1, const PointSet& a2, const PointSet& a3,
                       const PointSet& a4);

/// Exact maximum-dimension affine subspace contained in S, by canonical
/// depth-first basis extension with dimension and candidate-count pruning.
/// Deterministic: among maximum-dimension subspaces, the one whose
/// (minimum point, greedy basis) encoding is smallest. Capped by default
/// at n <= 14; beyond that use max_affine_subspace_greedy.
AffineSubspace max_affine_subspace_in(const PointSet& s, int max_n = 14);

/// Seeded random-restart greedy basis extension; the result is a lower
/// bound on the maximum dimension, not a certificate of maximality.
AffineSubspace max_affine_subspace_greedy(const PointSet& s, std::uint64_t seed,
                                          int restarts = 64);

struct BogolyubovResult {
  AffineSubspace v;
  int codim = 0;
  double alpha = 0.0;
  double log4_inv_alpha = 0.0;
  std::uint64_t four_a_size = 0;
  bool exact = true;  // false when the greedy fallback produced v
};

/// Largest affine subspace the oracle finds inside 4A = A+A+A+A, together
/// with the (codim, log^4(1/alpha)) pair for the experiment ledger. No
/// ratio between the two is asserted anywhere.
BogolyubovResult bogolyubov_4a(const PointSet& a, int oracle_max_n = 14);
BogolyubovResult bogolyubov_4a_greedy(const PointSet& a, std::uint64_t seed, int restarts = 64);

}  // namespace xorlab
