#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "qens/types.hpp"

namespace qens {

// splitmix64 finalizer; used to fold stream ids into seed material.
inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Deterministic seeded generator with hierarchical substreams.
//
// Identity (pinned so results are reproducible across platforms and
// standard-library versions):
//   * engine: std::mt19937_64 seeded with splitmix64(key)
//   * substream(ids...): key' = splitmix64(key ^ (golden + id)) folded per id,
//     derived from the key alone, never from engine position
//   * uniform01: 53-bit mantissa, (next_u64() >> 11) * 2^-53, range [0,1)
//   * standard_normal: Marsaglia polar method with one cached spare
//   * uniform_below(n): rejection against 2^64 mod n, unbiased
// <random> distribution objects are deliberately not used: their output is
// implementation-defined and would break byte-identical reruns.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : key_(seed), engine_(splitmix64(seed)) {}

  // Derives an independent child stream; depends only on this stream's key
  // and the ids, so it may be called at any time, in any order.
  template <typename... Ids>
  [[nodiscard]] Rng substream(Ids... ids) const {
    std::uint64_t k = key_;
    ((k = splitmix64(k ^ (0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(ids)))), ...);
    return Rng(k);
  }

  std::uint64_t next_u64() { return engine_(); }

  // U[0,1) with 53 random mantissa bits.
  Real uniform01() { return static_cast<Real>(next_u64() >> 11) * 0x1.0p-53; }

  Real uniform(Real lo, Real hi) { return lo + (hi - lo) * uniform01(); }

  // Unbiased integer in [0, n).
  std::uint64_t uniform_below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  // N(0,1) via the polar method.
  Real standard_normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    Real u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const Real m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_;
  std::mt19937_64 engine_;
  Real spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace qens
