#include "onofri/constants.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>

#include "onofri/errors.hpp"
#include "onofri/quadrature.hpp"

namespace onofri {

namespace {

double int_power(double base, int exponent) {
  double result = 1.0;
  for (int i = 0; i < exponent; ++i) result *= base;
  return result;
}

// Integrand of omega * int_0^inf r^{n-1} e^{eta0} g(eta0) dr after the map
// t = s/(1+s), s = r^{n/(n-1)}, so that the tail becomes t -> 1.
template <class Weight>
double mapped_bubble_integrand(int n, double omega, double t, Weight&& weight) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double nd = n;
  const double s = t / (1.0 - t);
  const double r = std::pow(s, (nd - 1.0) / nd);
  const double ds_dt = 1.0 / ((1.0 - t) * (1.0 - t));
  const double dr_ds = (nd - 1.0) / nd * std::pow(s, -1.0 / nd);
  const double eta = bubble_value(n, r);
  return omega * std::pow(r, nd - 1.0) * std::exp(eta) * weight(eta) * dr_ds * ds_dt;
}

}  // namespace

void require_dimension(int n) {
  if (n < 2) throw DomainError("dimension must be an integer >= 2, got " + std::to_string(n));
}

double sphere_measure(int n) {
  require_dimension(n);
  const int k = n / 2;
  const double pi_k = int_power(std::numbers::pi, k);
  if (n % 2 == 0) {
    // Gamma(k) = (k-1)!
    double factorial = 1.0;
    for (int j = 2; j < k; ++j) factorial *= j;
    return 2.0 * pi_k / factorial;
  }
  // Gamma(k + 1/2) = sqrt(pi) * prod_{j<k} (j + 1/2); the sqrt(pi) cancels.
  double half_factorial = 1.0;
  for (int j = 0; j < k; ++j) half_factorial *= j + 0.5;
  return 2.0 * pi_k / half_factorial;
}

double harmonic_number(int k) {
  if (k < 0) throw DomainError("harmonic_number: negative index");
  if (k <= 60) {
    __extension__ typedef unsigned __int128 u128;
    u128 num = 0;
    u128 den = 1;
    for (int j = 1; j <= k; ++j) {
      // num/den + 1/j = (num*j + den) / (den*j), reduced each step
      const u128 jj = static_cast<u128>(j);
      num = num * jj + den;
      den = den * jj;
      u128 a = num;
      u128 b = den;
      while (b != 0) {
        const u128 r = a % b;
        a = b;
        b = r;
      }
      num /= a;
      den /= a;
    }
    return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den));
  }
  // Kahan summation, smallest terms first.
  double sum = 0.0;
  double carry = 0.0;
  for (int j = k; j >= 1; --j) {
    const double y = 1.0 / j - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum;
}

DimensionConstants bundle(int n) {
  require_dimension(n);
  DimensionConstants c;
  const double nd = n;
  c.n = n;
  c.omega = sphere_measure(n);
  c.alpha = nd * std::pow(c.omega, 1.0 / (nd - 1.0));
  const double ratio_power = int_power(nd * nd / (nd - 1.0), n - 1);
  c.c_crit = ratio_power * c.omega;
  c.beta = nd * ratio_power;
  c.quant_mass = int_power(nd * c.alpha / (nd - 1.0), n - 1);
  c.sharp = sharp_constant_closed_form(n);
  return c;
}

double bubble_value(int n, double radius) {
  const double nd = n;
  const double beta = nd * int_power(nd * nd / (nd - 1.0), n - 1);
  return std::log(beta) - nd * std::log1p(std::pow(radius, nd / (nd - 1.0)));
}

double bubble_slope(int n, double radius) {
  const double nd = n;
  const double p = nd / (nd - 1.0);
  if (radius <= 0.0) return 0.0;
  const double s = std::pow(radius, p);
  return -nd * p * (s / radius) / (1.0 + s);
}

double bubble_mass(int n, double quad_tol) {
  require_dimension(n);
  if (!(quad_tol > 0.0)) throw DomainError("bubble_mass: quad_tol must be positive");
  const double omega = sphere_measure(n);
  auto f = [n, omega](double t) {
    return mapped_bubble_integrand(n, omega, t, [](double) { return 1.0; });
  };
  return quad::integrate(f, 0.0, 1.0, 0.1 * quad_tol, 1e-15);
}

double sharp_constant_closed_form(int n) {
  require_dimension(n);
  return std::log(static_cast<double>(n) / sphere_measure(n)) - harmonic_number(n - 1);
}

SharpConstant sharp_constant(int n, double quad_tol) {
  require_dimension(n);
  if (!(quad_tol > 0.0)) throw DomainError("sharp_constant: quad_tol must be positive");
  const DimensionConstants c = bundle(n);
  const double nd = n;
  auto f = [n, &c](double t) {
    return mapped_bubble_integrand(n, c.omega, t, [](double eta) { return eta; });
  };
  const double scale = nd * c.c_crit;
  const double weighted = quad::integrate(f, 0.0, 1.0, 0.1 * quad_tol * scale, 1e-15);
  SharpConstant out;
  out.by_quadrature =
      weighted / scale + (nd - 1.0) / nd * std::log(c.beta) - std::log(c.c_crit);
  out.by_closed_form = c.sharp;
  const double diff = std::abs(out.by_quadrature - out.by_closed_form);
  if (diff > 10.0 * quad_tol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "sharp constant routes disagree for n=" << n << ": quadrature " << out.by_quadrature
        << " vs closed form " << out.by_closed_form;
    throw ConsistencyError(msg.str());
  }
  return out;
}

}  // namespace onofri
