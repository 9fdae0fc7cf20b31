#pragma once

// n-capacity and n-modulus of concentric configurations B(0, inner) inside
// B(0, outer), where the capacity potential is explicit:
//   phi(x) = t ln(outer/|x|) / ln(outer/inner)   for inner <= |x| <= outer.

#include <vector>

namespace onofri {

struct AnnulusSpec {
  int n = 2;
  double outer = 1.0;
  double inner = 0.5;
  double level = 1.0;  // value of the potential on the inner ball

  void validate() const;
};

// omega * ln(outer/inner)^{1-n}; the level is not used (capacity is the
// energy at level 1).
double annulus_capacity(const AnnulusSpec& spec);

// Plateau `level` for radius <= inner, logarithmic in the annulus, 0 at
// outer. Throws DomainError for radius outside [0, outer].
double capacity_potential(const AnnulusSpec& spec, double radius);
double capacity_potential_slope(const AnnulusSpec& spec, double radius);

// omega * int_inner^outer r^{n-1} |phi'|^n dr by adaptive quadrature in r.
double capacity_potential_energy(const AnnulusSpec& spec, double quad_tol);

// cap^{1/(1-n)}.
double n_modulus(int n, double cap);

// Capacity of the ball B(center, radius) relative to B(0, outer). Only the
// concentric case has a closed form; anything else throws UnsupportedError.
double ball_capacity(int n, double outer, double center_offset, double radius);

// For B(0, r1), B(0, r2) and A = B(0, eps):
//   |nmod_1(A) - nmod_2(A) - (tau_2(0) - tau_1(0))|
// maximized over eps_list.
double modulus_shift_check(int n, double r1, double r2, const std::vector<double>& eps_list);

}  // namespace onofri
