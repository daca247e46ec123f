#pragma once

#include <cstdint>

namespace rsc {

// Weyl increment of the reference SplitMix64 generator.
inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

// SplitMix64 finalizer (constants 0xBF58476D1CE4E5B9, 0x94D049BB133111EB).
// Bijective avalanche on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Seed for trial number `trial` of a run seeded with `master`. Stateless, so
// a pool of workers can pick up trials in any order and still reproduce the
// single-threaded results bit for bit.
constexpr std::uint64_t derive_trial_seed(std::uint64_t master,
                                          std::uint64_t trial) noexcept {
  return mix64(master + (trial + 1) * kGoldenGamma);
}

/**
 * Counter-based 64-bit generator (SplitMix64): the state walks a Weyl
 * sequence and each output is the mixed counter. Period 2^64; all draws
 * derive from next(), so a fixed seed fixes the whole stream.
 */
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept { return mix64(state_ += kGoldenGamma); }

  // Uniform on [0,1) with 53 random bits; never returns 1.0.
  double next_unit() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // One uniform variate per call regardless of the outcome.
  bool next_bernoulli(double p) noexcept { return next_unit() < p; }

  // Uniform on [0,bound) for bound >= 1, by multiply-shift with rejection of
  // the biased low slice, so the result is exactly uniform.
  std::uint64_t next_below(std::uint64_t bound) noexcept;

  // Poisson by CDF inversion, one uniform per draw. Meant for mean <= ~30.
  std::int32_t next_poisson(double mean) noexcept;

 private:
  std::uint64_t state_;
};

}  // namespace rsc
