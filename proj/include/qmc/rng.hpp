#pragma once

#include <cstdint>

namespace qmc {

// Golden-ratio increment used for seed derivation and the splitmix stream.
inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

// Child stream derivation: child = mix64(master XOR golden * stream_index).
// Streams derived from the same master are independent enough for parallel
// trials and reproducible without coordination.
inline std::uint64_t child_seed(std::uint64_t master, std::uint64_t stream_index) {
  return mix64(master ^ (kGoldenGamma * stream_index));
}

// SplitMix64 generator. Deterministic across platforms (no reliance on
// std::uniform_int_distribution, which is not portable between stdlibs).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  // Unbiased integer in [0, n) via rejection.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = -n % n;  // 2^64 mod n
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  // Uniform double in [0, 1) with 53 bits of precision.
  double real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace qmc
