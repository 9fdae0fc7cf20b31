#include "onofri/capacity.hpp"

#include <algorithm>
#include <cmath>

#include "onofri/constants.hpp"
#include "onofri/errors.hpp"
#include "onofri/harmonic_radius.hpp"
#include "onofri/quadrature.hpp"

namespace onofri {

void AnnulusSpec::validate() const {
  require_dimension(n);
  if (!(inner > 0.0) || !(outer > inner) || !std::isfinite(outer))
    throw DomainError("annulus: need 0 < inner < outer");
  if (!(level > 0.0) || !std::isfinite(level)) throw DomainError("annulus: level must be positive");
}

double annulus_capacity(const AnnulusSpec& spec) {
  spec.validate();
  return sphere_measure(spec.n) * std::pow(std::log(spec.outer / spec.inner), 1.0 - spec.n);
}

double capacity_potential(const AnnulusSpec& spec, double radius) {
  spec.validate();
  if (!(radius >= 0.0) || radius > spec.outer)
    throw DomainError("capacity_potential: radius outside [0, outer]");
  if (radius <= spec.inner) return spec.level;
  if (radius == spec.outer) return 0.0;
  return spec.level * std::log(spec.outer / radius) / std::log(spec.outer / spec.inner);
}

double capacity_potential_slope(const AnnulusSpec& spec, double radius) {
  spec.validate();
  if (!(radius >= 0.0) || radius > spec.outer)
    throw DomainError("capacity_potential_slope: radius outside [0, outer]");
  if (radius < spec.inner) return 0.0;
  return -spec.level / (radius * std::log(spec.outer / spec.inner));
}

double capacity_potential_energy(const AnnulusSpec& spec, double quad_tol) {
  spec.validate();
  if (!(quad_tol > 0.0)) throw DomainError("capacity_potential_energy: quad_tol must be positive");
  const double nd = spec.n;
  const double integral = quad::integrate(
      [&](double r) {
        return std::pow(r, nd - 1.0) * std::pow(std::abs(capacity_potential_slope(spec, r)), nd);
      },
      spec.inner, spec.outer, 0.0, quad_tol);
  return sphere_measure(spec.n) * integral;
}

double n_modulus(int n, double cap) {
  require_dimension(n);
  if (!(cap > 0.0)) throw DomainError("n_modulus: capacity must be positive");
  if (std::isinf(cap)) return 0.0;
  return std::pow(cap, 1.0 / (1.0 - n));
}

double ball_capacity(int n, double outer, double center_offset, double radius) {
  if (center_offset != 0.0)
    throw UnsupportedError("ball_capacity: only concentric balls have a closed form");
  return annulus_capacity({n, outer, radius, 1.0});
}

double modulus_shift_check(int n, double r1, double r2, const std::vector<double>& eps_list) {
  require_dimension(n);
  if (!(r1 > 0.0) || !(r2 > 0.0)) throw DomainError("modulus_shift_check: radii must be positive");
  if (eps_list.empty()) throw DomainError("modulus_shift_check: empty eps list");
  const double tau1 = robin_ball_center(n, r1).robin;
  const double tau2 = robin_ball_center(n, r2).robin;
  double worst = 0.0;
  for (double eps : eps_list) {
    if (!(eps > 0.0) || eps >= std::min(r1, r2))
      throw DomainError("modulus_shift_check: eps must lie in (0, min(r1, r2))");
    const double mod1 = n_modulus(n, ball_capacity(n, r1, 0.0, eps));
    const double mod2 = n_modulus(n, ball_capacity(n, r2, 0.0, eps));
    worst = std::max(worst, std::abs(mod1 - mod2 - (tau2 - tau1)));
  }
  return worst;
}

}  // namespace onofri
