#include "xorlab/gf2core.hpp"

#include <algorithm>
#include <string>

namespace xorlab {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::dimension_mismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::dim_out_of_range: return "DIM_OUT_OF_RANGE";
    case ErrorCode::empty_subspace: return "EMPTY_SUBSPACE";
    case ErrorCode::empty_set: return "EMPTY_SET";
    case ErrorCode::empty_intermediate: return "EMPTY_INTERMEDIATE";
    case ErrorCode::cap_exceeded: return "CAP_EXCEEDED";
    case ErrorCode::invalid_hex: return "INVALID_HEX";
    case ErrorCode::length_mismatch: return "LENGTH_MISMATCH";
    case ErrorCode::unknown_family: return "UNKNOWN_FAMILY";
    case ErrorCode::mask_overflow: return "MASK_OVERFLOW";
    case ErrorCode::unknown_suite: return "UNKNOWN_SUITE";
    case ErrorCode::malformed_tree: return "MALFORMED_TREE";
    case ErrorCode::malformed_protocol: return "MALFORMED_PROTOCOL";
    case ErrorCode::invalid_spec: return "INVALID_SPEC";
    case ErrorCode::prime_disagreement: return "PRIME_DISAGREEMENT";
    case ErrorCode::invalid_argument: return "INVALID_ARGUMENT";
  }
  return "UNKNOWN_ERROR";
}

void check_dim(int n) {
  if (n < 1 || n > kMaxDim)
    fail(ErrorCode::dim_out_of_range,
         "dimension " + std::to_string(n) + " outside [1, " + std::to_string(kMaxDim) + "]");
}

Vec2::Vec2(int n_arg, std::uint32_t bits_arg) : n(n_arg), bits(bits_arg) {
  check_dim(n);
  if (bits & ~dim_mask(n))
    fail(ErrorCode::dim_out_of_range, "vector has bits above coordinate " + std::to_string(n - 1));
}

LinearForm::LinearForm(int n_arg, std::uint32_t mask_arg) : n(n_arg), mask(mask_arg) {
  check_dim(n);
  if (mask & ~dim_mask(n))
    fail(ErrorCode::dim_out_of_range, "form has bits above coordinate " + std::to_string(n - 1));
}

int eval_form(const LinearForm& form, const Vec2& x) {
  if (form.n != x.n) fail(ErrorCode::dimension_mismatch, "eval_form: form and point disagree");
  return parity32(form.mask & x.bits);
}

namespace {

inline int pivot_of(std::uint32_t row) { return std::countr_zero(row); }

// Reduce v by an RREF row set: clear every existing pivot bit from v.
inline std::uint32_t reduce(std::uint32_t v, const std::vector<std::uint32_t>& rows) {
  for (std::uint32_t r : rows)
    if (v & (r & (~r + 1u))) v ^= r;
  return v;
}

// Insert v (reduced or not) into an RREF row set kept in descending pivot order.
void rref_insert(std::vector<std::uint32_t>& rows, std::uint32_t v) {
  v = reduce(v, rows);
  if (!v) return;
  std::uint32_t pbit = v & (~v + 1u);
  for (std::uint32_t& r : rows)
    if (r & pbit) r ^= v;
  auto pos = std::lower_bound(rows.begin(), rows.end(), v,
                              [](std::uint32_t a, std::uint32_t b) {
                                return pivot_of(a) > pivot_of(b);
                              });
  rows.insert(pos, v);
}

}  // namespace

AffineSubspace AffineSubspace::span_rref(int n, std::vector<std::uint32_t> vectors,
                                         std::uint32_t offset) {
  check_dim(n);
  const std::uint32_t m = dim_mask(n);
  if (offset & ~m) fail(ErrorCode::dim_out_of_range, "span_rref: offset out of range");
  AffineSubspace s;
  s.n_ = n;
  for (std::uint32_t v : vectors) {
    if (v & ~m) fail(ErrorCode::dim_out_of_range, "span_rref: vector out of range");
    rref_insert(s.basis_, v);
  }
  s.offset_ = reduce(offset, s.basis_);
  return s;
}

AffineSubspace AffineSubspace::span_rref(const std::vector<Vec2>& vectors, const Vec2& offset) {
  std::vector<std::uint32_t> raw;
  raw.reserve(vectors.size());
  for (const Vec2& v : vectors) {
    if (v.n != offset.n) fail(ErrorCode::dimension_mismatch, "span_rref: mixed dimensions");
    raw.push_back(v.bits);
  }
  return span_rref(offset.n, std::move(raw), offset.bits);
}

AffineSubspace AffineSubspace::full(int n) {
  check_dim(n);
  std::vector<std::uint32_t> rows;
  for (int i = 0; i < n; ++i) rows.push_back(1u << i);
  return span_rref(n, std::move(rows), 0);
}

AffineSubspace AffineSubspace::single_point(int n, std::uint32_t p) {
  return span_rref(n, {}, p);
}

bool AffineSubspace::contains(std::uint32_t x) const {
  return reduce(x ^ offset_, basis_) == 0;
}

std::vector<int> AffineSubspace::pivots_ascending() const {
  std::vector<int> p;
  p.reserve(basis_.size());
  for (auto it = basis_.rbegin(); it != basis_.rend(); ++it) p.push_back(pivot_of(*it));
  return p;
}

std::vector<std::uint32_t> nullspace(const std::vector<std::uint32_t>& rows, int n) {
  check_dim(n);
  std::vector<std::uint32_t> rref;
  for (std::uint32_t r : rows) rref_insert(rref, r);
  std::uint32_t pivot_set = 0;
  for (std::uint32_t r : rref) pivot_set |= (r & (~r + 1u));
  std::vector<std::uint32_t> out;
  for (int j = 0; j < n; ++j) {
    if (pivot_set & (1u << j)) continue;
    std::uint32_t s = 1u << j;
    for (std::uint32_t r : rref)
      if (r & (1u << j)) s |= (r & (~r + 1u));
    out.push_back(s);
  }
  return out;
}

std::vector<Constraint> constraints_of(const AffineSubspace& v) {
  std::vector<Constraint> cs;
  for (std::uint32_t s : nullspace(v.basis(), v.n()))
    cs.push_back({s, parity32(s & v.offset())});
  return cs;
}

std::optional<AffineSubspace> from_constraints(int n, const std::vector<Constraint>& cs) {
  check_dim(n);
  // RREF over augmented rows (mask | rhs); pivot on the mask's lowest bit.
  std::vector<std::uint32_t> masks;
  std::vector<int> rhs;
  for (const Constraint& c : cs) {
    std::uint32_t m = c.form;
    int b = c.rhs;
    for (std::size_t i = 0; i < masks.size(); ++i) {
      std::uint32_t pbit = masks[i] & (~masks[i] + 1u);
      if (m & pbit) {
        m ^= masks[i];
        b ^= rhs[i];
      }
    }
    if (!m) {
      if (b) return std::nullopt;
      continue;
    }
    std::uint32_t pbit = m & (~m + 1u);
    for (std::size_t i = 0; i < masks.size(); ++i) {
      if (masks[i] & pbit) {
        masks[i] ^= m;
        rhs[i] ^= b;
      }
    }
    masks.push_back(m);
    rhs.push_back(b);
  }
  // Particular solution with free coordinates zero: reduced rows touch no
  // other row's pivot, so each pivot coordinate is just its rhs bit.
  std::uint32_t x0 = 0;
  for (std::size_t i = 0; i < masks.size(); ++i)
    if (rhs[i]) x0 |= (masks[i] & (~masks[i] + 1u));
  return AffineSubspace::span_rref(n, nullspace(masks, n), x0);
}

std::optional<AffineSubspace> intersect(const AffineSubspace& v, const AffineSubspace& w) {
  if (v.n() != w.n()) fail(ErrorCode::dimension_mismatch, "intersect: mixed dimensions");
  std::vector<Constraint> cs = constraints_of(v);
  std::vector<Constraint> cw = constraints_of(w);
  cs.insert(cs.end(), cw.begin(), cw.end());
  return from_constraints(v.n(), cs);
}

AffineMap parametrize(const AffineSubspace& v) {
  AffineMap m;
  m.t = v.dim();
  m.n = v.n();
  m.b = v.offset();
  const auto& rows = v.basis();
  m.columns.assign(rows.rbegin(), rows.rend());  // ascending pivot order
  return m;
}

std::vector<std::uint32_t> coset_points(const AffineSubspace& v, int max_dim) {
  if (v.dim() > max_dim)
    fail(ErrorCode::cap_exceeded,
         "coset_points: dim " + std::to_string(v.dim()) + " exceeds cap " + std::to_string(max_dim));
  std::vector<std::uint32_t> pts(1ull << v.dim());
  pts[0] = v.offset();
  std::size_t have = 1;
  for (auto it = v.basis().rbegin(); it != v.basis().rend(); ++it) {
    for (std::size_t i = 0; i < have; ++i) pts[have + i] = pts[i] ^ *it;
    have *= 2;
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

std::uint32_t lift_form_through(const AffineSubspace& v, std::uint32_t q) {
  std::uint32_t r = 0;
  int j = 0;
  for (auto it = v.basis().rbegin(); it != v.basis().rend(); ++it, ++j)
    if (q & (1u << j)) r |= (*it & (~*it + 1u));
  return r;
}

}  // namespace xorlab
