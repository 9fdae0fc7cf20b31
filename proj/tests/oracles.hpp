#pragma once

// Independent reference values for the tests. Nothing here calls into the
// library: sphere measures are tabulated, everything else is a closed form
// derived by hand from the explicit bubble solutions.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace oracle {

constexpr double pi = std::numbers::pi;

// |S^{n-1}| for n = 2..10, written out.
inline double sphere(int n) {
  switch (n) {
    case 2: return 2.0 * pi;
    case 3: return 4.0 * pi;
    case 4: return 2.0 * pi * pi;
    case 5: return 8.0 * pi * pi / 3.0;
    case 6: return pi * pi * pi;
    case 7: return 16.0 * pi * pi * pi / 15.0;
    case 8: return pi * pi * pi * pi / 3.0;
    case 9: return 32.0 * pi * pi * pi * pi / 105.0;
    case 10: return pi * pi * pi * pi * pi / 12.0;
  }
  throw std::out_of_range("oracle::sphere: n outside 2..10");
}

inline double harmonic(int k) {
  double h = 0.0;
  for (int j = 1; j <= k; ++j) h += 1.0 / j;
  return h;
}

inline double sharp(int n) { return std::log(n / sphere(n)) - harmonic(n - 1); }

inline double sharp_disk() { return -1.0 - std::log(pi); }

inline double beta(int n) { return n * std::pow(double(n) * n / (n - 1.0), n - 1); }

inline double c_crit(int n) { return std::pow(double(n) * n / (n - 1.0), n - 1) * sphere(n); }

// eta0(r) = ln beta - n ln(1 + r^{n/(n-1)})
inline double bubble(int n, double r) {
  return std::log(beta(n)) - n * std::log1p(std::pow(r, n / (n - 1.0)));
}

// The radial solution with v(0) = peak of -Delta_n v = e^v is
// eta0(r/eps) - n ln eps, eps = (beta e^{-peak})^{1/n}. On the unit ball
// that gives lambda = e^{v(1)}, u = v - ln lambda, and mass lambda int e^u.
struct BranchValues {
  double eps;
  double lambda;
  double mass;
  double peak_u;
  double energy_J;  // J_rho(u) at rho = mass
};

inline BranchValues branch(int n, double peak) {
  const double nd = n;
  const double p = nd / (nd - 1.0);
  BranchValues b{};
  b.eps = std::pow(beta(n) * std::exp(-peak), 1.0 / nd);
  const double T = std::pow(b.eps, -p);
  const double S = T / (1.0 + T);
  b.lambda = beta(n) * std::pow(b.eps, -nd) * std::pow(1.0 + T, -nd);
  b.mass = c_crit(n) * std::pow(S, nd - 1.0);
  b.peak_u = peak - std::log(b.lambda);
  // int_B |grad v|^n = omega (n p)^n / p * int_0^S s^{n-1}/(1-s) ds
  double tail = -std::log1p(-S);
  for (int k = 1; k <= n - 1; ++k) tail -= std::pow(S, k) / k;
  const double dirichlet = sphere(n) * std::pow(nd * p, nd) / p * tail;
  b.energy_J = dirichlet / (nd * b.mass) - std::log(b.mass / b.lambda);
  return b;
}

// n = 2 in the delta parametrization u = 2 ln((1 + delta)/(1 + delta r^2)).
inline double liouville_u(double delta, double r) {
  return 2.0 * std::log((1.0 + delta) / (1.0 + delta * r * r));
}
inline double liouville_mass(double delta) { return 8.0 * pi * delta / (1.0 + delta); }
inline double liouville_J(double delta) {
  return std::log1p(delta) / delta - 1.0 - std::log(pi);
}

// J_{8 pi} of Phi_L = 2 ln((1 + L^2)/(L^2 + r^2)) on the unit disk.
inline double disk_test_family_J(double L) { return sharp_disk() + L * L / (1.0 + L * L); }

// Green function of the unit disk with pole x (complex), normalized so
// that G ~ (1/2 pi) ln(1/|x - y|).
inline double disk_green(std::complex<double> x, std::complex<double> y) {
  return std::log(std::abs(1.0 - std::conj(x) * y) / std::abs(x - y)) / (2.0 * pi);
}

// Composite Simpson rule with `panels` (even) subintervals.
template <class F>
double simpson(F&& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace oracle
