#pragma once

#include <cstdint>

namespace idealseq {

// Counter-based SplitMix64: word i of a stream is mix64(seed + (i+1)*GAMMA).
// Random access, no state, identical output on every platform.
inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

constexpr std::uint64_t counter_word(std::uint64_t seed, std::uint64_t counter) {
  return mix64(seed + (counter + 1) * kGoldenGamma);
}

constexpr bool coin_flip(std::uint64_t seed, std::uint64_t counter) {
  return (counter_word(seed, counter) & 1ULL) != 0;
}

// Decorrelated per-stream seed, e.g. one stream per Monte Carlo trial.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return mix64(seed ^ counter_word(0x5851F42D4C957F2DULL, stream));
}

}  // namespace idealseq
