#include "rsc/sampler.hpp"

#include <algorithm>
#include <stdexcept>

#include "rsc/rng.hpp"

namespace rsc {

SampleParams SampleParams::with_p(std::int32_t n, std::int32_t d, double p,
                                  std::uint64_t seed) {
  SampleParams params;
  params.n = n;
  params.d = d;
  params.p = p;
  params.seed = seed;
  return params;
}

SampleParams SampleParams::with_c(std::int32_t n, std::int32_t d, double c,
                                  std::uint64_t seed) {
  SampleParams params;
  params.n = n;
  params.d = d;
  params.c = c;
  params.seed = seed;
  return params;
}

double SampleParams::resolved_p() const {
  if (d < 1) throw std::invalid_argument("sample: d must be at least 1");
  if (n < d + 1) throw std::invalid_argument("sample: need n >= d+1");
  if (p.has_value() == c.has_value())
    throw std::invalid_argument("sample: exactly one of p and c must be set");
  const double value = p ? *p : *c / n;
  if (!(value >= 0.0 && value <= 1.0))
    throw std::invalid_argument("sample: inclusion probability outside [0,1]");
  return value;
}

Complex sample_complex(const SampleParams& params) {
  const double p = params.resolved_p();
  Complex y;
  y.n = params.n;
  y.d = params.d;

  SplitMix64 engine(params.seed);
  VertexList v = first_combination(params.d + 1);
  do {
    if (engine.next_bernoulli(p)) y.simplices.push_back(v);
  } while (next_combination(v, params.n));
  return y;
}

ProcessStream::ProcessStream(std::int32_t n, std::int32_t d,
                             std::uint64_t seed)
    : n_(n), d_(d), binom_(n > 0 ? n : 1, d + 1) {
  if (d < 1) throw std::invalid_argument("stream: d must be at least 1");
  if (n < d + 1) throw std::invalid_argument("stream: need n >= d+1");
  const std::uint64_t total = binom_.at(n, d + 1);
  order_.resize(total);
  for (std::uint64_t i = 0; i < total; ++i) order_[i] = i;
  // Fisher-Yates, descending, one bounded draw per position.
  SplitMix64 engine(seed);
  for (std::uint64_t i = total; i > 1; --i)
    std::swap(order_[i - 1], order_[engine.next_below(i)]);
}

Complex ProcessStream::prefix(std::int64_t m) const {
  if (m < 0 || m > total())
    throw std::out_of_range("stream prefix: length out of range");
  Complex y;
  y.n = n_;
  y.d = d_;
  y.simplices.reserve(static_cast<std::size_t>(m));
  for (std::int64_t i = 0; i < m; ++i)
    y.simplices.push_back(lex_unrank(order_[i], n_, d_ + 1, binom_));
  std::sort(y.simplices.begin(), y.simplices.end());
  return y;
}

ProcessStream sample_stream(std::int32_t n, std::int32_t d,
                            std::uint64_t seed) {
  return ProcessStream(n, d, seed);
}

}  // namespace rsc
