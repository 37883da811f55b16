#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "xorlab/error.hpp"

namespace xorlab {

// Bit conventions, used everywhere in this library:
//   - A point of F2^n is a uint32_t; coordinate i lives at bit i. Bits at
//     positions >= n are zero. n is capped at 24 (point sets over F2^n keep
//     a 2^n-bit membership table, which stops being desk-scale beyond that).
//   - The pivot of an RREF basis row is its lowest set bit. Rows are stored
//     in descending pivot order and a pivot bit occurs in exactly one row.
//   - The canonical coset representative has every pivot coordinate zero,
//     so equal cosets always compare equal field by field.
inline constexpr int kMaxDim = 24;

inline int parity32(std::uint32_t x) { return std::popcount(x) & 1; }

inline std::uint32_t dim_mask(int n) { return (n >= 32) ? ~0u : ((1u << n) - 1u); }

void check_dim(int n);

struct Vec2 {
  int n = 1;
  std::uint32_t bits = 0;

  Vec2() = default;
  Vec2(int n_arg, std::uint32_t bits_arg);

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

// Nonzero mask s defines the query x -> s.x; the zero form is representable
// (callers that forbid it, e.g. PDT queries, reject it themselves).
struct LinearForm {
  int n = 1;
  std::uint32_t mask = 0;

  LinearForm() = default;
  LinearForm(int n_arg, std::uint32_t mask_arg);

  friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

/// Inner product s.x over F2.
int eval_form(const LinearForm& form, const Vec2& x);

/// A coset offset + span(basis) of F2^n in canonical form (RREF basis,
/// pivot-free offset). Equality of cosets is equality of fields.
class AffineSubspace {
 public:
  AffineSubspace() = default;

  static AffineSubspace span_rref(int n, std::vector<std::uint32_t> vectors,
                                  std::uint32_t offset);
  static AffineSubspace span_rref(const std::vector<Vec2>& vectors, const Vec2& offset);
  static AffineSubspace full(int n);
  static AffineSubspace single_point(int n, std::uint32_t p);

  int n() const { return n_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  int codim() const { return n_ - dim(); }
  std::uint64_t size() const { return 1ull << dim(); }
  std::uint32_t offset() const { return offset_; }
  const std::vector<std::uint32_t>& basis() const { return basis_; }

  bool contains(std::uint32_t x) const;
  // pivot coordinates (lowest set bit per row), ascending
  std::vector<int> pivots_ascending() const;

  friend bool operator==(const AffineSubspace&, const AffineSubspace&) = default;

 private:
  int n_ = 1;
  std::uint32_t offset_ = 0;
  std::vector<std::uint32_t> basis_;
};

/// Intersection of two cosets; std::nullopt is the explicit Empty marker.
std::optional<AffineSubspace> intersect(const AffineSubspace& v, const AffineSubspace& w);

// Affine map z -> A z + b from F2^t to F2^n; column j of A multiplies bit j
// of z. parametrize() produces an injective map whose image is the subspace.
struct AffineMap {
  int t = 0;
  int n = 1;
  std::vector<std::uint32_t> columns;
  std::uint32_t b = 0;

  std::uint32_t eval(std::uint32_t z) const {
    std::uint32_t x = b;
    std::uint32_t rest = z;
    while (rest) {
      int j = std::countr_zero(rest);
      rest &= rest - 1;
      x ^= columns[static_cast<std::size_t>(j)];
    }
    return x;
  }
};

/// Canonical parametrization of a coset: source coordinate j drives the
/// j-th smallest pivot coordinate of the basis; the remaining coordinates
/// follow affinely. Deterministic by construction.
AffineMap parametrize(const AffineSubspace& v);

/// All 2^dim points of the coset, ascending. Guards dim with a cap.
std::vector<std::uint32_t> coset_points(const AffineSubspace& v, int max_dim = 20);

// A linear constraint s.x = rhs. constraints_of returns the canonical dual
// description of a coset: codim() forms, each constant on the coset.
struct Constraint {
  std::uint32_t form = 0;
  int rhs = 0;
  friend bool operator==(const Constraint&, const Constraint&) = default;
};

std::vector<Constraint> constraints_of(const AffineSubspace& v);

/// Solution coset of a linear system, or Empty when inconsistent.
std::optional<AffineSubspace> from_constraints(int n, const std::vector<Constraint>& cs);

/// Canonical basis of {s : s.r = 0 for every row r}; rows need not be RREF.
std::vector<std::uint32_t> nullspace(const std::vector<std::uint32_t>& rows, int n);

/// Linear form q over F2^t pulled through the subspace's parametrization:
/// the result r satisfies r.L(z) = q.z for all z (bits of q scattered onto
/// the ascending pivot coordinates; r ignores the offset by canonicity).
std::uint32_t lift_form_through(const AffineSubspace& v, std::uint32_t q);

}  // namespace xorlab
