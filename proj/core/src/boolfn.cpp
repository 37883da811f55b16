#include "xorlab/boolfn.hpp"

#include <algorithm>

#include "xorlab/rng.hpp"

namespace xorlab {

BoolFn::BoolFn(int n, BitVec table) : n_(check(n)), table_(std::move(table)) {
  if (table_.size() != (1ull << n_))
    fail(ErrorCode::length_mismatch, "truth table must hold exactly 2^n bits");
}

int BoolFn::eval(const Vec2& x) const {
  if (x.n != n_) fail(ErrorCode::dimension_mismatch, "BoolFn::eval: point dimension differs");
  return eval(x.bits);
}

bool BoolFn::is_constant() const {
  std::uint64_t c = table_.count();
  return c == 0 || c == domain_size();
}

bool Anf::has(std::uint32_t mask) const {
  return std::binary_search(monomials.begin(), monomials.end(), mask);
}

void mobius_inplace(BitVec& t, int n) {
  auto& w = t.words();
  for (int j = 0; j < n; ++j) {
    if (j < 6) {
      const int sh = 1 << j;
      std::uint64_t m = ~0ull;
      switch (j) {
        case 0: m = 0x5555555555555555ull; break;
        case 1: m = 0x3333333333333333ull; break;
        case 2: m = 0x0f0f0f0f0f0f0f0full; break;
        case 3: m = 0x00ff00ff00ff00ffull; break;
        case 4: m = 0x0000ffff0000ffffull; break;
        case 5: m = 0x00000000ffffffffull; break;
      }
      for (std::uint64_t& word : w) word ^= (word & m) << sh;
    } else {
      const std::size_t stride = 1ull << (j - 6);
      for (std::size_t base = 0; base < w.size(); base += 2 * stride)
        for (std::size_t i = 0; i < stride; ++i) w[base + stride + i] ^= w[base + i];
    }
  }
}

Anf anf_deg2(const BoolFn& f) {
  BitVec coeffs = f.table();
  mobius_inplace(coeffs, f.n());
  Anf a;
  a.n = f.n();
  a.deg2 = 0;
  for (std::uint64_t m = 0; m < f.domain_size(); ++m) {
    if (coeffs.get(m)) {
      a.monomials.push_back(static_cast<std::uint32_t>(m));
      a.deg2 = std::max(a.deg2, std::popcount(static_cast<std::uint32_t>(m)));
    }
  }
  return a;
}

BoolFn fn_from_anf(int n, const std::vector<std::uint32_t>& monomials) {
  check_dim(n);
  BitVec coeffs(1ull << n);
  for (std::uint32_t m : monomials) {
    if (m >= (1u << n)) fail(ErrorCode::mask_overflow, "ANF monomial mask >= 2^n");
    coeffs.set(m, !coeffs.get(m));  // XOR semantics if a mask repeats
  }
  mobius_inplace(coeffs, n);
  return BoolFn(n, std::move(coeffs));
}

namespace {

template <typename Int>
void wht_generic(std::span<Int> v) {
  const std::size_t n = v.size();
  for (std::size_t len = 1; len < n; len <<= 1) {
    for (std::size_t base = 0; base < n; base += 2 * len) {
      for (std::size_t i = base; i < base + len; ++i) {
        Int a = v[i], b = v[i + len];
        v[i] = a + b;
        v[i + len] = a - b;
      }
    }
  }
}

}  // namespace

void wht_inplace(std::span<std::int32_t> v) { wht_generic(v); }
void wht_inplace(std::span<std::int64_t> v) { wht_generic(v); }

Spectrum wht_spectrum(const BoolFn& f) {
  const std::uint64_t size = f.domain_size();
  Spectrum s;
  s.n = f.n();
  s.coeffs01.resize(size);
  for (std::uint64_t x = 0; x < size; ++x) s.coeffs01[x] = f.eval(static_cast<std::uint32_t>(x));
  wht_inplace(std::span<std::int32_t>(s.coeffs01));
  s.coeffs_pm.resize(size);
  for (std::uint64_t i = 0; i < size; ++i)
    s.coeffs_pm[i] = (i == 0 ? static_cast<std::int32_t>(size) : 0) - 2 * s.coeffs01[i];
  return s;
}

std::int64_t sparsity(const Spectrum& s, SpectrumConvention c) {
  const auto& v = (c == SpectrumConvention::zero_one) ? s.coeffs01 : s.coeffs_pm;
  return std::count_if(v.begin(), v.end(), [](std::int32_t x) { return x != 0; });
}

std::int64_t sparsity(const BoolFn& f, SpectrumConvention c) {
  return sparsity(wht_spectrum(f), c);
}

BoolFn restrict_affine(const BoolFn& f, const AffineSubspace& v) {
  if (v.n() != f.n()) fail(ErrorCode::dimension_mismatch, "restrict_affine: ambient dim differs");
  AffineMap map = parametrize(v);
  // pts[z] = map(z), filled by doubling over the columns
  std::vector<std::uint32_t> pts(1ull << map.t);
  pts[0] = map.b;
  std::size_t have = 1;
  for (int j = 0; j < map.t; ++j) {
    for (std::size_t i = 0; i < have; ++i) pts[have + i] = pts[i] ^ map.columns[j];
    have *= 2;
  }
  BoolFn g(std::max(map.t, 1));
  if (map.t == 0) {
    int b = f.eval(pts[0]);
    g.set(0, b);
    g.set(1, b);  // dim-0 coset restricts to a constant on one variable
    return g;
  }
  for (std::size_t z = 0; z < pts.size(); ++z) g.set(static_cast<std::uint32_t>(z), f.eval(pts[z]));
  return g;
}

int XorLift::eval(std::span<const std::uint32_t> xs) const {
  std::uint32_t acc = 0;
  for (std::uint32_t x : xs) acc ^= x;
  return f.eval(acc);
}

XorLift xor_lift(BoolFn f, int k) {
  if (k < 2) fail(ErrorCode::invalid_argument, "xor_lift: k must be >= 2");
  return XorLift{std::move(f), k};
}

namespace {

BoolFn random_fn(int n, std::uint64_t seed) {
  Rng rng(seed);
  BitVec t(1ull << n);
  for (auto& w : t.words()) w = rng.next();
  if ((1ull << n) < 64) t.words()[0] &= (1ull << (1ull << n)) - 1;
  return BoolFn(n, std::move(t));
}

BoolFn random_anf_fn(int n, int d, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::uint32_t> monomials;
  for (std::uint32_t m = 0; m < (1u << n); ++m)
    if (std::popcount(m) <= d && rng.coin()) monomials.push_back(m);
  return fn_from_anf(n, monomials);
}

}  // namespace

BoolFn gen_family(const std::string& name, int n, std::uint64_t seed) {
  check_dim(n);
  std::string base = name;
  int anf_deg = 2;
  if (auto pos = name.find(':'); pos != std::string::npos) {
    base = name.substr(0, pos);
    try {
      anf_deg = std::stoi(name.substr(pos + 1));
    } catch (...) {
      fail(ErrorCode::unknown_family, "bad family parameter in '" + name + "'");
    }
    if (base != "random_anf" || anf_deg < 0 || anf_deg > n)
      fail(ErrorCode::unknown_family, "bad family parameter in '" + name + "'");
  }

  const std::uint32_t all = dim_mask(n);
  BoolFn f(n);
  if (base == "parity") {
    for (std::uint32_t x = 0; x <= all; ++x) f.set(x, parity32(x));
  } else if (base == "and") {
    f.set(all, 1);
  } else if (base == "threshold") {
    const int th = (n + 1) / 2;
    for (std::uint32_t x = 0; x <= all; ++x) f.set(x, std::popcount(x) >= th);
  } else if (base == "ip") {
    if (n % 2 != 0) fail(ErrorCode::invalid_spec, "family 'ip' needs even n");
    for (std::uint32_t x = 0; x <= all; ++x) {
      int acc = 0;
      for (int i = 0; i + 1 < n; i += 2) acc ^= ((x >> i) & (x >> (i + 1)) & 1u);
      f.set(x, acc);
    }
  } else if (base == "address") {
    int a = -1;
    for (int cand = 0; cand + (1 << cand) <= n; ++cand)
      if (cand + (1 << cand) == n) a = cand;
    if (a < 0) fail(ErrorCode::invalid_spec, "family 'address' needs n = a + 2^a");
    for (std::uint32_t x = 0; x <= all; ++x) {
      std::uint32_t addr = x & dim_mask(a);
      f.set(x, (x >> (a + addr)) & 1u);
    }
  } else if (base == "random") {
    f = random_fn(n, seed);
  } else if (base == "random_anf") {
    f = random_anf_fn(n, anf_deg, seed);
  } else {
    fail(ErrorCode::unknown_family, "no family named '" + name + "'");
  }
  return f;
}

std::vector<std::string> family_names() {
  return {"parity", "and", "threshold", "ip", "address", "random_anf:2", "random"};
}

}  // namespace xorlab
