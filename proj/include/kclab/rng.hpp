#pragma once

#include <cstdint>

namespace kclab {

/// SplitMix64 stream. Fixed constants, platform-independent output; every
/// seeded result in the library is a pure function of (parameters, seed).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  bool next_bit() { return next_u64() & 1u; }

  /// Uniform value in [0, bound); bound > 0. Rejection-free modulo is fine
  /// here: reproducibility matters, negligible bias at desk scale does not.
  std::uint64_t next_below(std::uint64_t bound) { return next_u64() % bound; }

  /// Uniform in [lo, hi] inclusive.
  std::uint64_t next_range(std::uint64_t lo, std::uint64_t hi) {
    return lo + next_below(hi - lo + 1);
  }

 private:
  std::uint64_t state_;
};

/// Per-trial seed derivation: trial i of a run seeded with s always sees the
/// same stream, so serial and parallel executions agree element-wise.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  Rng g(seed ^ (0xD1B54A32D192ED03ull * (index + 1)));
  return g.next_u64();
}

}  // namespace kclab
