#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace onofri {

enum class GridKind { uniform, graded };

// A radial function sampled on [nodes.front(), domain_radius] with nodal
// values and derivatives. Between nodes it is the piecewise cubic Hermite
// interpolant of (values, derivs).
struct RadialProfile {
  std::vector<double> nodes;
  std::vector<double> values;
  std::vector<double> derivs;
  double domain_radius = 1.0;
  GridKind grid_kind = GridKind::graded;

  std::size_t size() const { return nodes.size(); }

  // Throws DomainError when sizes mismatch, nodes are not strictly
  // increasing, the last node is not domain_radius, or derivs[0] != 0 at
  // an origin node.
  void validate() const;

  double value_at(double r) const;
  double deriv_at(double r) const;

  // Index of the first node whose value exceeds its predecessor's by more
  // than `slack`; 0 when the profile is non-increasing.
  std::size_t first_increase(double slack) const;
};

using RadialIntegrand = std::function<double(double r, double u, double du)>;

// sum over node intervals of a 5-point Gauss-Legendre rule applied to
// f(r, u(r), u'(r)), with u the Hermite interpolant. Integrates over
// [nodes.front(), upper] (upper defaults to domain_radius).
double integrate_profile(const RadialProfile& profile, const RadialIntegrand& f);
double integrate_profile(const RadialProfile& profile, const RadialIntegrand& f, double upper);

// Builds a profile by sampling an analytic function and its derivative.
RadialProfile sample_profile(const std::vector<double>& nodes,
                             const std::function<double(double)>& value,
                             const std::function<double(double)>& deriv, GridKind kind);

// r_i = R * (i / (count-1)) (uniform) or R * (i / (count-1))^2 (graded).
std::vector<double> make_grid(std::size_t count, double radius, GridKind kind);

// {0} followed by points log-uniform on [r_min, radius], `per_decade`
// points per factor of ten.
std::vector<double> log_grid(double r_min, double radius, std::size_t per_decade);

}  // namespace onofri
