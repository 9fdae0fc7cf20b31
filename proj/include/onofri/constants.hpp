#pragma once

// Dimensional constants of the n-Laplacian Liouville / Moser-Onofri problem
// on the unit ball of R^n, and the explicit entire solution ("bubble")
//
//   eta0(x) = ln( beta_n / (1 + |x|^{n/(n-1)})^n ),   -Delta_n eta0 = e^{eta0},
//
// whose total mass is C_n.

namespace onofri {

struct DimensionConstants {
  int n = 0;
  double omega = 0.0;       // |S^{n-1}|
  double alpha = 0.0;       // Moser exponent n * omega^{1/(n-1)}
  double c_crit = 0.0;      // (n^2/(n-1))^{n-1} * omega
  double beta = 0.0;        // n * (n^2/(n-1))^{n-1}, e^{eta0(0)}
  double quant_mass = 0.0;  // (n alpha / (n-1))^{n-1}, blow-up mass of one bubble
  double sharp = 0.0;       // infimum of the Moser-Onofri functional on the ball (closed form)
};

struct SharpConstant {
  double by_quadrature = 0.0;
  double by_closed_form = 0.0;
};

// Throws DomainError for n < 2.
void require_dimension(int n);

// 2 pi^{n/2} / Gamma(n/2), with Gamma at integers and half-integers taken
// from exact recursion so the result is a rational multiple of a power of pi.
double sphere_measure(int n);

// Harmonic number H_k = 1 + 1/2 + ... + 1/k summed as an exact fraction
// (k <= 60) before the single division.
double harmonic_number(int k);

DimensionConstants bundle(int n);

// eta0 at |x| = radius. Equals ln(beta_n) - n ln(1 + radius^{n/(n-1)}).
double bubble_value(int n, double radius);

// d eta0 / dr.
double bubble_slope(int n, double radius);

// omega * int_0^inf r^{n-1} e^{eta0(r)} dr by adaptive Gauss-Kronrod after
// mapping r in [0, inf) to t = s/(1+s), s = r^{n/(n-1)}. Result is C_n.
double bubble_mass(int n, double quad_tol);

// ln(n / omega) - H_{n-1}.
double sharp_constant_closed_form(int n);

// Both routes to the sharp constant. The quadrature route evaluates
//   (1/(n C_n)) int_{R^n} e^{eta0} eta0 + ((n-1)/n) ln beta_n - ln C_n.
// Throws ConsistencyError if the routes differ by more than 10 * quad_tol.
SharpConstant sharp_constant(int n, double quad_tol);

}  // namespace onofri
