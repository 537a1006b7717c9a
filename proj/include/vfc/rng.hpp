#pragma once

#include <cstdint>

namespace vfc {

/// splitmix64 generator (Steele, Lea, Flood). Small state, exact 64-bit
/// reproducibility on every platform, and trivially splittable -- which is
/// what the experiment harness and the optimizer need for deterministic
/// per-stream draws under any thread count.
struct SplitMix64 {
  std::uint64_t state = 0;

  constexpr SplitMix64() = default;
  constexpr explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  constexpr std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1), 53 mantissa bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n). Multiply-shift; bias is ~n/2^64.
  std::uint64_t next_below(std::uint64_t n) {
    if (n == 0) return 0;
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  /// Uniform integer in the closed range [lo, hi].
  int next_int(int lo, int hi) {
    return lo + static_cast<int>(next_below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  /// Uniform real in [lo, hi).
  double next_in(double lo, double hi) { return lo + (hi - lo) * next_double(); }
};

/// Seed for an independent substream identified by (a, b) under a run seed.
/// The optimizer gives every (iteration, wolf) pair its own stream keyed this
/// way, so evaluation order and thread count never change the draws.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  SplitMix64 s(seed ^ (0xA0761D6478BD642Full + a * 0x8BB84B93962EACC9ull));
  const std::uint64_t x = s.next();
  SplitMix64 t(x ^ (0xE7037ED1A0B428DBull + b * 0x2F5870A5F7C79B49ull));
  return t.next();
}

}  // namespace vfc
