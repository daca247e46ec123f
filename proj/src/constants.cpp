#include "rsc/constants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rsc {

namespace {

template <class F>
double bisect(const F& f, double lo, double hi, double tol) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0))
    throw std::runtime_error("bisect: endpoints do not bracket a sign change");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // hit double resolution
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  return 0.5 * (lo + hi);
}

// Root of f on [1, inf): f(1) must be negative, then the bracket is doubled
// until f turns positive. Matches the threshold equations, which all dip
// below zero at 1 and grow linearly at infinity.
template <class F>
double solve_upward(const F& f, double tol, const char* what) {
  const double lo = 1.0;
  if (!(f(lo) < 0.0)) throw std::runtime_error(std::string(what) + ": left endpoint does not bracket");
  double hi = 2.0;
  std::int32_t guard = 0;
  while (f(hi) <= 0.0) {
    hi *= 2.0;
    if (++guard > 60) throw std::runtime_error(std::string(what) + ": no sign change found");
  }
  return bisect(f, lo, hi, tol);
}

void check_dimension(std::int32_t d) {
  if (d < 1) throw std::invalid_argument("dimension d must be at least 1");
}

}  // namespace

double g_d_eval(std::int32_t d, double x) {
  check_dimension(d);
  const double ex = std::exp(-x);
  return (d + 1) * (x + 1) * ex + x * std::pow(1.0 - ex, d + 1);
}

double solve_c_d(std::int32_t d, double tol) {
  check_dimension(d);
  return solve_upward(
      [d](double x) { return g_d_eval(d, x) - (d + 1); }, tol, "solve_c_d");
}

double u_d_eval(double gamma, double x, std::int32_t d) {
  check_dimension(d);
  return std::exp(-gamma * std::pow(1.0 - x, d)) - x;
}

GammaSolution solve_gamma_d(std::int32_t d, double tol) {
  check_dimension(d);
  if (d == 1) return {1.0, 1.0};  // thresholds collide at the tree point
  // x = 1 always satisfies the tangency equation; the relevant solution is
  // the unique interior one, bracketed away from both endpoints.
  const auto f = [d](double x) {
    return std::exp(-(1.0 - x) / (d * x)) - x;
  };
  const double x_star = bisect(f, 1e-9, 1.0 - 1e-6, tol);
  const double gamma =
      1.0 / (d * x_star * std::pow(1.0 - x_star, d - 1));
  return {gamma, x_star};
}

RhoCurve rho_recursion(std::int32_t d, double gamma, std::int32_t k,
                       double tol) {
  check_dimension(d);
  if (gamma < 0.0) throw std::invalid_argument("rho_recursion: gamma < 0");
  if (k < 0) throw std::invalid_argument("rho_recursion: k < 0");

  RhoCurve curve;
  curve.d = d;
  curve.gamma = gamma;
  curve.values.reserve(static_cast<std::size_t>(k) + 1);
  double x = std::exp(-gamma);
  curve.values.push_back(x);
  for (std::int32_t i = 1; i <= k; ++i) {
    x = std::exp(-gamma * std::pow(1.0 - x, d));
    curve.values.push_back(x);
  }

  // The iteration is monotone nondecreasing from e^{-gamma}, so it converges
  // to the smallest fixed point in [0,1].
  double fp = curve.values.front();
  constexpr std::int64_t kMaxIterations = 1000000;
  for (curve.iterations = 0; curve.iterations < kMaxIterations;
       ++curve.iterations) {
    const double next = std::exp(-gamma * std::pow(1.0 - fp, d));
    const bool done = std::abs(next - fp) < tol;
    fp = next;
    if (done) {
      curve.converged = true;
      break;
    }
  }
  curve.fixed_point = fp;
  return curve;
}

double theta_d_ell(std::int32_t d, std::int32_t ell, double x) {
  check_dimension(d);
  const double ex = std::exp(-x);
  if (ell == 1) return ex;
  if (ell == 2)
    return (1.0 + x) * ex -
           x / (d + 1) * (1.0 - std::pow(1.0 - ex, d + 1));
  throw std::invalid_argument("theta_d_ell: only levels 1 and 2 are defined");
}

double solve_c_d_ell(std::int32_t d, std::int32_t ell, double tol) {
  check_dimension(d);
  return solve_upward(
      [d, ell](double x) {
        return x + (d + 1) * theta_d_ell(d, ell, x) - (d + 1);
      },
      tol, "solve_c_d_ell");
}

TreeGF tree_gf(double z, std::int64_t truncation) {
  const double radius = std::exp(-1.0);
  if (!(z >= 0.0) || z > radius)
    throw std::domain_error("tree_gf: z must lie in [0, 1/e]");
  if (truncation < 1)
    throw std::invalid_argument("tree_gf: truncation must be >= 1");

  TreeGF out;
  // Stirling gives k^{k-1} z^k / k! <= (2 pi)^{-1/2} k^{-3/2} at z = 1/e;
  // integrating the envelope bounds the omitted tail. Terms shrink with z,
  // so the same bound holds on the whole disk of convergence.
  out.tail_bound = std::sqrt(2.0 / (std::numbers::pi * truncation));
  if (z == 0.0) return out;

  const double log_z = std::log(z);
  double sum = 0.0;
  double comp = 0.0;  // Kahan compensation: 1e7 positive terms
  for (std::int64_t k = 1; k <= truncation; ++k) {
    const double term = std::exp((k - 1) * std::log(static_cast<double>(k)) -
                                 std::lgamma(static_cast<double>(k) + 1.0) +
                                 k * log_z);
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  out.r = sum;
  out.t = sum - 0.5 * sum * sum;
  return out;
}

double tilde_c1_residual(double x, std::int64_t truncation) {
  if (!(x > 0.0))
    throw std::invalid_argument("tilde_c1_residual: x must be positive");
  // x e^{-x} peaks exactly at the radius 1/e; clamp away the rounding spill.
  const double z = std::min(x * std::exp(-x), std::exp(-1.0));
  const TreeGF gf = tree_gf(z, truncation);
  return x + 2.0 * gf.t / x - 2.0;
}

ThresholdReport threshold_report(std::int32_t d, double tol) {
  ThresholdReport report;
  report.d = d;
  report.tol = tol;
  report.c_d = solve_c_d(d, tol);
  const GammaSolution gamma = solve_gamma_d(d, tol);
  report.gamma_d = gamma.gamma_d;
  report.x_star = gamma.x_star;
  report.c_d_1 = solve_c_d_ell(d, 1, tol);
  report.c_d_2 = solve_c_d_ell(d, 2, tol);
  return report;
}

}  // namespace rsc
