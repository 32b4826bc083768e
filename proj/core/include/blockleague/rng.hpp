#pragma once

#include <cstdint>

namespace blockleague {

// Deterministic PRNG used by every stochastic component.
//
// Engine: xoshiro256** (Blackman & Vigna), seeded by expanding a 64-bit seed
// through splitmix64.  We deliberately avoid std::mt19937 + std::*_distribution:
// the standard distributions are implementation-defined, so traces would not be
// bit-identical across standard libraries.  uniform01() and uniform_int() below
// are fully specified here, which makes runs reproducible from the seed alone
// on any conforming platform.
//
// Stream splitting: independent chains use Rng(seed, stream).  The stream index
// perturbs the seed with a distinct odd constant multiple (the 64-bit golden
// gamma used by splitmix64 itself) before key expansion, so chain c is
// decorrelated from chain c' without coordination.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
    std::uint64_t key = seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1));
    for (auto& word : state_) word = splitmix64(key);
  }

  // Raw 64-bit output of xoshiro256**.
  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform double in [0, 1): the top 53 bits scaled by 2^-53.  Never returns
  // 1.0; can return 0.0 (callers taking logs must guard, see log_uniform01).
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in {0, 1, ..., bound-1} via Lemire's multiply-shift with
  // rejection; unbiased and deterministic.  bound must be >= 1.
  std::uint64_t uniform_int(std::uint64_t bound) {
    // 128-bit multiply-high rejection sampler.
    std::uint64_t x = next_u64();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    std::uint64_t low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        x = next_u64();
        m = static_cast<__uint128_t>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  static std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_[4];
};

}  // namespace blockleague
