#pragma once

#include <cstdint>

namespace nilaw {

// SplitMix64 (Steele/Lea/Flood). Chosen because every published seed must
// reproduce reports bit-for-bit on any platform: the generator is three
// multiply/xor-shift steps on a 64-bit counter, and supports O(1) random
// access, so draw i of a stream can be computed without iterating. Bounded
// draws use the 128-bit multiply trick instead of modulo.
struct SplitMix64 {
  static constexpr uint64_t kGamma = 0x9E3779B97F4A7C15ull;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    state += kGamma;
    return finalize(state);
  }

  uint64_t bounded(uint64_t n) { return mul_shift(next(), n); }

  static uint64_t finalize(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Draw i of the stream started at `seed` (stateless; order-independent).
  static uint64_t at(uint64_t seed, uint64_t i) { return finalize(seed + (i + 1) * kGamma); }

  static uint64_t bounded_at(uint64_t seed, uint64_t i, uint64_t n) {
    return mul_shift(at(seed, i), n);
  }

  static uint64_t mul_shift(uint64_t r, uint64_t n) {
    return uint64_t((static_cast<unsigned __int128>(r) * n) >> 64);
  }

  uint64_t state;
};

}  // namespace nilaw
