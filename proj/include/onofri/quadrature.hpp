#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace onofri::quad {

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  int evaluations = 0;
  int intervals = 0;
  bool converged = false;
};

using Integrand = std::function<double(double)>;

// Globally adaptive 7/15-point Gauss-Kronrod on a finite interval [a, b]
// (GSL's QAG): the interval with the largest error estimate is bisected
// until abs_error <= max(abs_tol, rel_tol * |value|), max_intervals is hit
// or roundoff stalls progress. Never throws on non-convergence; callers
// inspect `converged`.
QuadResult gauss_kronrod(const Integrand& f, double a, double b, double abs_tol,
                         double rel_tol, int max_intervals = 4000);

// Same as gauss_kronrod but throws QuadratureError (with the achieved
// estimate) when the tolerance is not met.
double integrate(const Integrand& f, double a, double b, double abs_tol, double rel_tol,
                 int max_intervals = 4000);

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;  // sum to 2
};

// Gauss-Legendre rule with `points` nodes, ascending.
GaussRule gauss_legendre(std::size_t points);

// Cached 5-point rule on [0, 1] (nodes ascending, weights sum to 1).
const GaussRule& unit_gauss5();

}  // namespace onofri::quad
