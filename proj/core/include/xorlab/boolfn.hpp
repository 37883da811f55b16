#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "xorlab/gf2core.hpp"

namespace xorlab {

// Packed bit table; word i holds bits [64i, 64i+64).
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::uint64_t nbits, bool fill = false)
      : nbits_(nbits), words_((nbits + 63) / 64, fill ? ~0ull : 0ull) {
    trim();
  }

  std::uint64_t size() const { return nbits_; }

  bool get(std::uint64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

  void set(std::uint64_t i, bool v) {
    std::uint64_t& w = words_[i >> 6];
    std::uint64_t bit = 1ull << (i & 63);
    w = v ? (w | bit) : (w & ~bit);
  }

  std::uint64_t count() const {
    std::uint64_t c = 0;
    for (std::uint64_t w : words_) c += std::popcount(w);
    return c;
  }

  std::vector<std::uint64_t>& words() { return words_; }
  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const BitVec&, const BitVec&) = default;

 private:
  void trim() {
    if (nbits_ & 63) words_.back() &= (~0ull >> (64 - (nbits_ & 63)));
  }

  std::uint64_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Total boolean function on F2^n as a bit-packed truth table indexed by
/// the integer value of the input point. Plain value type; spectra and ANF
/// are computed by the free functions below, not cached here.
class BoolFn {
 public:
  BoolFn() : n_(1), table_(2) {}
  explicit BoolFn(int n) : n_(check(n)), table_(1ull << n) {}
  BoolFn(int n, BitVec table);

  int n() const { return n_; }
  std::uint64_t domain_size() const { return 1ull << n_; }
  int eval(std::uint32_t x) const { return table_.get(x); }
  int eval(const Vec2& x) const;
  void set(std::uint32_t x, int v) { table_.set(x, v != 0); }
  const BitVec& table() const { return table_; }
  std::uint64_t ones() const { return table_.count(); }
  bool is_constant() const;

  friend bool operator==(const BoolFn&, const BoolFn&) = default;

 private:
  static int check(int n) {
    check_dim(n);
    return n;
  }

  int n_;
  BitVec table_;
};

// Integer Walsh spectra, exact. coeffs01[s] = sum_x f(x) (-1)^{s.x} and
// coeffs_pm[s] = sum_x (-1)^{f(x)+s.x}; the two are tied by
// coeffs_pm[s] = (s == 0 ? 2^n : 0) - 2 coeffs01[s].
struct Spectrum {
  int n = 1;
  std::vector<std::int32_t> coeffs01;
  std::vector<std::int32_t> coeffs_pm;
};

enum class SpectrumConvention { zero_one, plus_minus };

// Algebraic normal form: f = XOR over monomials of prod_{i in mask} x_i.
// deg2 is the max monomial weight; 0 for both constants.
struct Anf {
  int n = 1;
  std::vector<std::uint32_t> monomials;  // ascending masks with coefficient 1
  int deg2 = 0;

  bool has(std::uint32_t mask) const;
};

Anf anf_deg2(const BoolFn& f);
BoolFn fn_from_anf(int n, const std::vector<std::uint32_t>& monomials);

Spectrum wht_spectrum(const BoolFn& f);
std::int64_t sparsity(const Spectrum& s, SpectrumConvention c);
std::int64_t sparsity(const BoolFn& f, SpectrumConvention c);

/// g(z) = f(L(z)) under the canonical parametrization of v. A dim-0 coset
/// restricts to a constant function on one variable (n = 0 is outside the
/// point types), with both table entries equal to f at the point.
BoolFn restrict_affine(const BoolFn& f, const AffineSubspace& v);

/// Evaluator for F(x_1,...,x_k) = f(x_1 ^ ... ^ x_k).
struct XorLift {
  BoolFn f;
  int k = 2;

  int eval(std::span<const std::uint32_t> xs) const;
};

XorLift xor_lift(BoolFn f, int k);

// Seeded generators of test families. Names: "parity", "and", "threshold"
// (Hamming weight >= ceil(n/2)), "ip" (even n), "address" (n = a + 2^a),
// "random", "random_anf" or "random_anf:<d>".
BoolFn gen_family(const std::string& name, int n, std::uint64_t seed);
std::vector<std::string> family_names();

// In-place unnormalized Walsh transform; applying it twice multiplies by 2^n.
void wht_inplace(std::span<std::int32_t> v);
void wht_inplace(std::span<std::int64_t> v);

/// In-place GF(2) Moebius transform on a packed 2^n-bit table (an involution;
/// maps a truth table to its ANF coefficient table and back).
void mobius_inplace(BitVec& t, int n);

}  // namespace xorlab
