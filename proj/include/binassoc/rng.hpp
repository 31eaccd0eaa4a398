#pragma once

#include <cstdint>
#include <random>
#include <vector>

// Reproducible random number plumbing. All sampling in this project goes
// through the helpers below instead of <random> distributions, so that a
// (master_seed, stream) pair pins the output bit-for-bit on every platform
// and under any thread count.

namespace binassoc::rng {

using Engine = std::mt19937_64;

// splitmix64 finalizer; decorrelates consecutive seed values.
inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

// Derived seed for substream `stream` of `master`.
inline std::uint64_t derive(std::uint64_t master, std::uint64_t stream) {
  return mix64(master + 0x9E3779B97F4A7C15ull * (stream + 1));
}

inline Engine substream(std::uint64_t master, std::uint64_t stream) {
  return Engine(derive(master, stream));
}

// Uniform draw strictly inside (0, 1), 53-bit resolution.
inline double uniform01(Engine& eng) {
  return (static_cast<double>(eng() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

// Unbiased draw from {0, ..., n-1} by rejection.
inline std::uint64_t uniform_below(Engine& eng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t r = eng();
    if (r >= threshold) return r % n;
  }
}

template <class T>
void shuffle(std::vector<T>& items, Engine& eng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(uniform_below(eng, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace binassoc::rng
