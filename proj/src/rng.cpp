#include "rsc/rng.hpp"

#include <cmath>

namespace rsc {

std::uint64_t SplitMix64::next_below(std::uint64_t bound) noexcept {
  unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
  auto lo = static_cast<std::uint64_t>(m);
  if (lo < bound) {
    const std::uint64_t threshold = -bound % bound;
    while (lo < threshold) {
      m = static_cast<unsigned __int128>(next()) * bound;
      lo = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

std::int32_t SplitMix64::next_poisson(double mean) noexcept {
  const double u = next_unit();
  double pmf = std::exp(-mean);
  double cdf = pmf;
  std::int32_t k = 0;
  // The cap only matters when roundoff stalls the CDF just short of u.
  while (u >= cdf && k < 4096) {
    ++k;
    pmf *= mean / k;
    cdf += pmf;
  }
  return k;
}

}  // namespace rsc
