#pragma once

#include <cstdint>
#include <string_view>

namespace lgd {

// splitmix64 stream. Self-contained so that sampling is bit-identical across
// platforms and standard libraries; std distributions are not portable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform integer in [0, n). n must be > 0. Masked rejection keeps the
  // draw unbiased without 128-bit arithmetic.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t mask = ~0ULL;
    if (n == 1) return 0;
    std::uint64_t limit = n - 1;
    mask >>= 63 - bit_width_minus_one(limit);
    for (;;) {
      std::uint64_t v = next_u64() & mask;
      if (v < n) return v;
    }
  }

  // Uniform double in [0, 1) with 53 bits of precision.
  double real01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  static int bit_width_minus_one(std::uint64_t v) {
    int w = 0;
    while (v >>= 1) ++w;
    return w;
  }

  std::uint64_t state_;
};

// FNV-1a over a label, folded into a base seed. Used to derive independent
// deterministic streams per edge / per language / per split.
inline std::uint64_t mix_seed(std::uint64_t seed, std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  // one splitmix scramble so nearby seeds decorrelate
  std::uint64_t z = seed ^ h;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace lgd
