#pragma once

#include <cstdint>

namespace advsim {

// SplitMix64. Self-contained so that seeded experiment streams are
// byte-reproducible regardless of standard library internals.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [lo, hi], inclusive.
  int uniform_int(int lo, int hi) {
    uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next() % span);
  }

 private:
  uint64_t state_;
};

// Deterministic seed derivation for (cell, trial) grids.
inline uint64_t derive_seed(uint64_t base, uint64_t cell, uint64_t trial) {
  SplitMix64 mix(base ^ (0x100000001b3ULL * (cell + 1)) ^ (0xcbf29ce484222325ULL * (trial + 1)));
  return mix.next();
}

}  // namespace advsim
