#include "onofri/profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "onofri/errors.hpp"
#include "onofri/quadrature.hpp"

namespace onofri {

namespace {

struct Located {
  std::size_t index;  // interval [nodes[index], nodes[index+1]]
  double t;           // local coordinate in [0, 1]
  double h;
};

Located locate(const RadialProfile& p, double r) {
  const auto& x = p.nodes;
  const double lo = x.front();
  const double hi = x.back();
  const double slack = 1e-12 * std::max(1.0, std::abs(hi));
  if (r < lo - slack || r > hi + slack) {
    std::ostringstream msg;
    msg << "radius " << r << " outside profile range [" << lo << ", " << hi << "]";
    throw DomainError(msg.str());
  }
  r = std::clamp(r, lo, hi);
  auto it = std::upper_bound(x.begin(), x.end(), r);
  std::size_t i = (it == x.begin()) ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
  if (i >= x.size() - 1) i = x.size() - 2;
  const double h = x[i + 1] - x[i];
  return {i, (r - x[i]) / h, h};
}

}  // namespace

void RadialProfile::validate() const {
  if (nodes.size() < 2) throw DomainError("profile needs at least two nodes");
  if (values.size() != nodes.size() || derivs.size() != nodes.size())
    throw DomainError("profile arrays have mismatched sizes");
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (!(nodes[i] > nodes[i - 1])) throw DomainError("profile nodes not strictly increasing");
  }
  if (nodes.front() < 0.0) throw DomainError("profile nodes must be non-negative radii");
  if (!(domain_radius > 0.0)) throw DomainError("profile domain radius must be positive");
  if (std::abs(nodes.back() - domain_radius) > 1e-12 * domain_radius)
    throw DomainError("last profile node must equal the domain radius");
  if (nodes.front() == 0.0 && derivs.front() != 0.0)
    throw DomainError("radial profile must have zero derivative at the origin");
}

double RadialProfile::value_at(double r) const {
  const Located l = locate(*this, r);
  const std::size_t i = l.index;
  const double t = l.t;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
  const double h10 = t3 - 2.0 * t2 + t;
  const double h01 = -2.0 * t3 + 3.0 * t2;
  const double h11 = t3 - t2;
  return h00 * values[i] + h10 * l.h * derivs[i] + h01 * values[i + 1] +
         h11 * l.h * derivs[i + 1];
}

double RadialProfile::deriv_at(double r) const {
  const Located l = locate(*this, r);
  const std::size_t i = l.index;
  const double t = l.t;
  const double t2 = t * t;
  const double d00 = 6.0 * t2 - 6.0 * t;
  const double d10 = 3.0 * t2 - 4.0 * t + 1.0;
  const double d01 = -6.0 * t2 + 6.0 * t;
  const double d11 = 3.0 * t2 - 2.0 * t;
  return (d00 * values[i] + d01 * values[i + 1]) / l.h + d10 * derivs[i] + d11 * derivs[i + 1];
}

std::size_t RadialProfile::first_increase(double slack) const {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[i - 1] + slack) return i;
  }
  return 0;
}

double integrate_profile(const RadialProfile& profile, const RadialIntegrand& f) {
  return integrate_profile(profile, f, profile.nodes.back());
}

double integrate_profile(const RadialProfile& profile, const RadialIntegrand& f, double upper) {
  const auto& rule = quad::unit_gauss5();
  const auto& x = profile.nodes;
  const auto& v = profile.values;
  const auto& d = profile.derivs;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i];
    if (a >= upper) break;
    const double full = x[i + 1] - a;
    const double b = std::min(x[i + 1], upper);
    const double span = b - a;
    double local = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double r = a + span * rule.nodes[q];
      const double t = (r - a) / full;
      const double t2 = t * t;
      const double t3 = t2 * t;
      const double u = (2.0 * t3 - 3.0 * t2 + 1.0) * v[i] + (t3 - 2.0 * t2 + t) * full * d[i] +
                       (-2.0 * t3 + 3.0 * t2) * v[i + 1] + (t3 - t2) * full * d[i + 1];
      const double du = ((6.0 * t2 - 6.0 * t) * v[i] + (-6.0 * t2 + 6.0 * t) * v[i + 1]) / full +
                        (3.0 * t2 - 4.0 * t + 1.0) * d[i] + (3.0 * t2 - 2.0 * t) * d[i + 1];
      local += rule.weights[q] * f(r, u, du);
    }
    total += span * local;
  }
  return total;
}

RadialProfile sample_profile(const std::vector<double>& nodes,
                             const std::function<double(double)>& value,
                             const std::function<double(double)>& deriv, GridKind kind) {
  RadialProfile p;
  p.nodes = nodes;
  p.values.reserve(nodes.size());
  p.derivs.reserve(nodes.size());
  for (double r : nodes) {
    p.values.push_back(value(r));
    p.derivs.push_back(r == 0.0 ? 0.0 : deriv(r));
  }
  p.domain_radius = nodes.back();
  p.grid_kind = kind;
  return p;
}

std::vector<double> make_grid(std::size_t count, double radius, GridKind kind) {
  if (count < 2) throw DomainError("grid needs at least two nodes");
  std::vector<double> r(count);
  const double last = static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    const double s = static_cast<double>(i) / last;
    r[i] = radius * (kind == GridKind::graded ? s * s : s);
  }
  r.back() = radius;
  return r;
}

std::vector<double> log_grid(double r_min, double radius, std::size_t per_decade) {
  if (!(r_min > 0.0) || !(r_min < radius)) throw DomainError("log_grid: need 0 < r_min < radius");
  const double decades = std::log10(radius / r_min);
  const auto steps = static_cast<std::size_t>(std::ceil(decades * static_cast<double>(per_decade)));
  std::vector<double> r;
  r.reserve(steps + 2);
  r.push_back(0.0);
  for (std::size_t i = 0; i <= steps; ++i) {
    const double frac = static_cast<double>(i) / static_cast<double>(steps);
    r.push_back(r_min * std::pow(radius / r_min, frac));
  }
  r.back() = radius;
  return r;
}

}  // namespace onofri
