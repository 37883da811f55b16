#pragma once

#include <bit>
#include <cstdint>
#include <random>

namespace xorlab {

// Thin wrapper over the standard 64-bit Mersenne twister. Only raw engine
// words are consumed (std::uniform_int_distribution is not portable across
// standard libraries), so a seed pins the whole stream bit-for-bit.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // uniform in [0, bound), bound >= 1; masked rejection sampling
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    std::uint64_t mask = ~0ull >> std::countl_zero(bound - 1);
    for (;;) {
      std::uint64_t v = gen_() & mask;
      if (v < bound) return v;
    }
  }

  bool coin() { return (gen_() >> 63) != 0; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace xorlab
