#pragma once

#include <cstdint>
#include <vector>

namespace rsc {

// g_d(x) = (d+1)(x+1)e^{-x} + x(1-e^{-x})^{d+1}. Equals d+1 at x = 0, dips
// below just to the right, and crosses d+1 once more from below; that
// crossing is the top-homology density threshold c_d.
double g_d_eval(std::int32_t d, double x);

// The unique positive solution of g_d(x) = d+1, by bisection on a doubling
// bracket. The returned value is within tol of the root.
double solve_c_d(std::int32_t d, double tol = 1e-10);

// u_d(gamma, x) = exp(-gamma (1-x)^d) - x, whose smallest fixed point in
// [0,1] is the limiting tree collapse probability.
double u_d_eval(double gamma, double x, std::int32_t d);

struct GammaSolution {
  double gamma_d = 0.0;  // collapsibility threshold
  double x_star = 0.0;   // tangency point: exp(-(1-x)/(d x)) = x in (0,1)
};

// gamma_d = (d x*(1-x*)^{d-1})^{-1} at the unique interior solution x* of
// exp(-(1-x)/(d x)) = x. d = 1 degenerates to gamma_1 = 1, x* = 1.
GammaSolution solve_gamma_d(std::int32_t d, double tol = 1e-10);

/** The collapse-probability recursion rho(0) = e^{-gamma},
    rho(k) = exp(-gamma (1-rho(k-1))^d), and its monotone limit. */
struct RhoCurve {
  std::int32_t d = 1;
  double gamma = 0.0;
  std::vector<double> values;  // rho(0..k)
  double fixed_point = 0.0;
  std::int64_t iterations = 0;
  bool converged = false;
};

RhoCurve rho_recursion(std::int32_t d, double gamma, std::int32_t k,
                       double tol = 1e-12);

// Bounded-depth variants of the limiting free-face generating function:
// theta_{d,1}(x) = e^{-x},
// theta_{d,2}(x) = (1+x)e^{-x} - x/(d+1) (1 - (1-e^{-x})^{d+1}).
// Only levels 1 and 2 are supported.
double theta_d_ell(std::int32_t d, std::int32_t ell, double x);

// The unique positive solution of x + (d+1) theta_{d,ell}(x) = d+1. For
// ell = 2 the left side equals g_d(x), so this reproduces c_d.
double solve_c_d_ell(std::int32_t d, std::int32_t ell, double tol = 1e-10);

/** Truncated rooted/unrooted labelled tree generating functions
    R(z) = sum_{k>=1} k^{k-1} z^k / k!  and  T(z) = R - R^2/2, summed in
    log-space up to the truncation index. tail_bound dominates the omitted
    tail for every z <= 1/e (it is the bound at the radius, where terms decay
    like k^{-3/2}). */
struct TreeGF {
  double r = 0.0;
  double t = 0.0;
  double tail_bound = 0.0;
};

// Requires 0 <= z <= 1/e (radius of convergence) and truncation >= 1.
TreeGF tree_gf(double z, std::int64_t truncation);

// Residual of the d = 1 threshold equation x + 2 T(x e^{-x})/x - 2 at x.
// Identically 0 on (0,1] up to truncation error and strictly positive for
// x > 1, making x = 1 the threshold.
double tilde_c1_residual(double x = 1.0, std::int64_t truncation = 10000000);

/** All threshold constants for one dimension. */
struct ThresholdReport {
  std::int32_t d = 0;
  double c_d = 0.0;
  double gamma_d = 0.0;
  double x_star = 0.0;
  double c_d_1 = 0.0;  // depth-1 bound, above c_d
  double c_d_2 = 0.0;  // depth-2 bound, equals c_d
  double tol = 0.0;
};

ThresholdReport threshold_report(std::int32_t d, double tol = 1e-10);

}  // namespace rsc
