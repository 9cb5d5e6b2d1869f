#pragma once

#include <cstdint>

namespace hfree {

// Counter-based pseudo-random source: the state is a plain 64-bit counter and
// every output is a bijective mix of it, so derived streams are cheap and all
// randomness flows deterministically from one seed.  Output sequences do not
// depend on the platform or standard library (no std::distributions).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : counter_(mix(seed + kStreamSalt)) {}

  // Independent stream for (seed, stream-index); used for per-chain seeding.
  static Rng derive(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next() {
    counter_ += kGamma;
    return mix(counter_);
  }

  // Uniform in [0, bound); bound >= 1.  Unbiased via rejection.
  std::uint64_t below(std::uint64_t bound);

  // Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t mix(std::uint64_t z);

  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
  static constexpr std::uint64_t kStreamSalt = 0xD1B54A32D192ED03ull;

  std::uint64_t counter_;
};

inline std::uint64_t Rng::mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline Rng Rng::derive(std::uint64_t seed, std::uint64_t stream) {
  Rng r(0);
  r.counter_ = mix(mix(seed + kStreamSalt) ^ (stream * kGamma + kStreamSalt));
  return r;
}

inline std::uint64_t Rng::below(std::uint64_t bound) {
  // Reject the tail of the 64-bit range so every residue is equally likely.
  const std::uint64_t limit = ~0ull - ~0ull % bound;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % bound;
}

}  // namespace hfree
