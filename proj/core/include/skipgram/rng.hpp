#pragma once

#include <cstdint>
#include <random>

namespace skipgram {

// Seeded random source. Wraps std::mt19937_64 but derives uniform values
// itself so that the draw sequence is identical on every platform (the
// standard pins the engine output, not the distributions).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on {0, ..., n-1}, unbiased (multiply-shift with rejection).
  std::uint64_t uniform_below(std::uint64_t n) {
    using u128 = unsigned __int128;
    u128 m = static_cast<u128>(engine_()) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      std::uint64_t threshold = (0 - n) % n;
      while (lo < threshold) {
        m = static_cast<u128>(engine_()) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Uniform on {lo, ..., hi} inclusive.
  std::int64_t uniform_between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    uniform_below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace skipgram
