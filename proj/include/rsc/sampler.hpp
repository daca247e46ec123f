#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rsc/complex.hpp"

namespace rsc {

/**
 * Parameters for the Bernoulli model Y_d(n,p): vertex set {0..n-1}, full
 * (d-1)-skeleton, every d-simplex kept independently with probability p.
 * Exactly one of p and c must be set; c is the scaled density p = c/n.
 */
struct SampleParams {
  std::int32_t n = 0;
  std::int32_t d = 1;
  std::optional<double> p;
  std::optional<double> c;
  std::uint64_t seed = 0;

  static SampleParams with_p(std::int32_t n, std::int32_t d, double p,
                             std::uint64_t seed);
  static SampleParams with_c(std::int32_t n, std::int32_t d, double c,
                             std::uint64_t seed);

  // The effective inclusion probability. Throws std::invalid_argument when
  // both or neither of p/c are set, when the result leaves [0,1], or when
  // n < d+1 or d < 1.
  double resolved_p() const;
};

// One Bernoulli draw per d-simplex, visited in lexicographic order and
// consuming exactly one uniform variate each; a pure function of
// (n, d, p, seed).
Complex sample_complex(const SampleParams& params);

/**
 * A uniformly ordered stream of all C(n,d+1) d-simplices: the process that
 * adds one new simplex at a time in the order of a uniform shuffle.
 * prefix(m) is the complex after m arrivals, so prefixes are nested.
 */
class ProcessStream {
 public:
  ProcessStream(std::int32_t n, std::int32_t d, std::uint64_t seed);

  std::int64_t total() const {
    return static_cast<std::int64_t>(order_.size());
  }

  // The first m arrivals as a complex; 0 <= m <= total().
  Complex prefix(std::int64_t m) const;

  // Arrival order as lexicographic simplex ranks.
  const std::vector<std::uint64_t>& order() const { return order_; }

  std::int32_t n() const { return n_; }
  std::int32_t d() const { return d_; }

 private:
  std::int32_t n_;
  std::int32_t d_;
  BinomialTable binom_;
  std::vector<std::uint64_t> order_;
};

ProcessStream sample_stream(std::int32_t n, std::int32_t d,
                            std::uint64_t seed);

}  // namespace rsc
