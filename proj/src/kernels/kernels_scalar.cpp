#include <cmath>

#include "kernels_internal.hpp"

namespace onofri::kernels::detail {

namespace {

// s^{(n-2)/2} for integer n >= 2.
inline double half_power(double s, int n) {
  const int whole = (n - 2) / 2;
  double q = 1.0;
  for (int i = 0; i < whole; ++i) q *= s;
  if ((n - 2) % 2 != 0) q *= std::sqrt(s);
  return q;
}

}  // namespace

double plaplace_scalar(int n, double reg, const double* grad, const double* weight, double* flux,
                       double* stiff, std::size_t count) {
  const double floor = reg * half_power(reg, n);  // reg^{n/2}
  double energy = 0.0;
  for (std::size_t e = 0; e < count; ++e) {
    const double g = grad[e];
    const double w = weight[e];
    const double s = g * g + reg;
    const double q = half_power(s, n);
    energy += w * (q * s - floor);
    flux[e] = w * q * g;
    if (n == 2) {
      stiff[e] = w;
    } else {
      stiff[e] = s > 0.0 ? w * (q / s) * ((n - 1) * g * g + reg) : 0.0;
    }
  }
  return energy;
}

void exp_moments_scalar(const double* left, const double* right, std::size_t count,
                        const double* xi, std::size_t q_points, const double* coeff, double* m0,
                        double* m1, double* m2) {
  for (std::size_t e = 0; e < count; ++e) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (std::size_t q = 0; q < q_points; ++q) {
      const double x = xi[q];
      const double ce = coeff[q * count + e] * std::exp(left[e] * (1.0 - x) + right[e] * x);
      s0 += ce;
      s1 += ce * x;
      s2 += ce * x * x;
    }
    m0[e] = s0;
    m1[e] = s1;
    m2[e] = s2;
  }
}

}  // namespace onofri::kernels::detail
