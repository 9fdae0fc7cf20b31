#include "onofri/harmonic_radius.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "onofri/constants.hpp"
#include "onofri/errors.hpp"
#include "onofri/quadrature.hpp"

namespace onofri {

namespace {

constexpr double kPi = std::numbers::pi;

// Distance s from x0 = (a, 0) along direction theta to the Apollonius
// circle |M| = c (c <= 1).
double apollonius_distance(double a, double c, double theta) {
  const double x = c * a * std::cos(theta);
  const double sn = std::sin(theta);
  return c * (1.0 - a * a) / (x + std::sqrt(1.0 - c * c * a * a * sn * sn));
}

}  // namespace

DomainSpec DomainSpec::ball(int n, double radius) {
  DomainSpec d;
  d.kind = Kind::ball;
  d.n = n;
  d.radius = radius;
  return d;
}

DomainSpec DomainSpec::disk(double offset) {
  DomainSpec d;
  d.kind = Kind::disk;
  d.n = 2;
  d.offset = offset;
  return d;
}

void DomainSpec::validate() const {
  require_dimension(n);
  if (kind == Kind::ball) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("ball radius must be positive");
  } else {
    if (n != 2) throw DomainError("the disk domain is two-dimensional");
    if (!(offset >= 0.0) || !(offset < 1.0)) throw DomainError("disk offset must lie in [0, 1)");
  }
}

RobinData robin_ball_center(int n, double R) {
  require_dimension(n);
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("robin_ball_center: R must be positive");
  const double coeff = n / bundle(n).alpha;
  RobinData d;
  d.green_singular_coeff = coeff;
  d.robin = -coeff * std::log(R);
  d.harmonic_radius = R;
  return d;
}

RobinData harmonic_radius_disk(double a) {
  if (!(a >= 0.0) || !(a < 1.0)) throw DomainError("harmonic_radius_disk: offset must lie in [0, 1)");
  const double coeff = 1.0 / (2.0 * kPi);
  RobinData d;
  d.green_singular_coeff = coeff;
  d.robin = -coeff * std::log1p(-a * a);
  d.harmonic_radius = 1.0 - a * a;
  return d;
}

RobinData robin_data(const DomainSpec& domain) {
  domain.validate();
  if (domain.kind == DomainSpec::Kind::ball) return robin_ball_center(domain.n, domain.radius);
  return harmonic_radius_disk(domain.offset);
}

double concentration_level(int n, const DomainSpec& domain) {
  require_dimension(n);
  if (domain.n != n) throw DomainError("concentration_level: dimension does not match the domain");
  const RobinData d = robin_data(domain);
  return sharp_constant_closed_form(n) - n * std::log(d.harmonic_radius);
}

Verdict existence_criterion(int n, double candidate_inf, double sup_log_radius, double tol) {
  require_dimension(n);
  if (!std::isfinite(candidate_inf) || !std::isfinite(sup_log_radius))
    throw DomainError("existence_criterion: inputs must be finite");
  if (!(tol >= 0.0)) throw DomainError("existence_criterion: tol must be nonnegative");
  const double bound = sharp_constant_closed_form(n) - n * sup_log_radius;
  if (candidate_inf < bound - tol) return Verdict::achieved;
  if (candidate_inf <= bound + tol) return Verdict::boundary_case;
  throw DomainError(
      "existence_criterion: candidate infimum exceeds the concentration bound, which "
      "concentrating sequences always reach");
}

const char* to_string(Verdict v) {
  return v == Verdict::achieved ? "achieved" : "boundary_case";
}

TransplantReport transplant_check(double a, const RadialProfile& U, double quad_tol) {
  if (!(a >= 0.0) || !(a < 1.0)) throw DomainError("transplant_check: offset must lie in [0, 1)");
  if (!(quad_tol > 0.0)) throw DomainError("transplant_check: quad_tol must be positive");
  U.validate();
  const double r = 1.0 - a * a;
  if (std::abs(U.domain_radius - r) > 1e-12 * r)
    throw DomainError("transplant_check: profile must live on B(0, 1 - a^2)");
  if (U.nodes.front() != 0.0) throw DomainError("transplant_check: profile must start at r = 0");
  if (U.first_increase(0.0) != 0)
    throw UnsupportedError("transplant_check: profile is not non-increasing, so it is not a "
                           "function of the Green level");
  if (*std::min_element(U.values.begin(), U.values.end()) < 0.0)
    throw UnsupportedError("transplant_check: profile must be non-negative");

  const quad::GaussRule gl = quad::gauss_legendre(10);
  const std::size_t pieces = U.nodes.size() - 1;

  // Integrals over one ray from x0, split where r |M| crosses a node.
  struct RayIntegrals {
    double energy = 0.0;
    double volume = 0.0;
  };
  auto ray = [&](double theta) {
    RayIntegrals out;
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    double s_lo = 0.0;
    for (std::size_t k = 0; k < pieces; ++k) {
      const double s_hi =
          k + 1 == pieces ? apollonius_distance(a, 1.0, theta)
                          : apollonius_distance(a, U.nodes[k + 1] / r, theta);
      const double half = 0.5 * (s_hi - s_lo);
      const double mid = 0.5 * (s_hi + s_lo);
      for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
        const double s = mid + half * gl.nodes[q];
        // y = x0 + s e^{i theta}; 1 - a y = (1 - a^2) - a s e^{i theta}.
        const double den_re = r - a * s * ct;
        const double den_im = -a * s * st;
        const double den2 = den_re * den_re + den_im * den_im;
        const double mod_M = std::min(1.0, s / std::sqrt(den2));
        const double rho = std::clamp(r * mod_M, U.nodes[k], U.nodes[k + 1]);
        const double dU = U.deriv_at(rho);
        const double dM = r / den2;  // |M'(y)|
        const double w = half * gl.weights[q] * s;
        out.energy += w * dU * dU * r * r * dM * dM;
        out.volume += w * std::exp(U.value_at(rho));
      }
      s_lo = s_hi;
    }
    return out;
  };

  TransplantReport rep;
  // Symmetric about the real axis: integrate theta over [0, pi] and double.
  rep.energy_disk = 2.0 * quad::integrate([&](double t) { return ray(t).energy; }, 0.0, kPi,
                                          0.0, quad_tol);
  rep.volume_disk = 2.0 * quad::integrate([&](double t) { return ray(t).volume; }, 0.0, kPi,
                                          0.0, quad_tol);
  rep.energy_ball = 2.0 * kPi * integrate_profile(U, [](double rr, double, double du) {
                      return rr * du * du;
                    });
  rep.volume_ball = 2.0 * kPi * integrate_profile(U, [](double rr, double u, double) {
                      return rr * std::exp(u);
                    });
  rep.energy_gap = std::abs(rep.energy_disk - rep.energy_ball);
  rep.volume_ratio = rep.volume_disk / rep.volume_ball;

  // Superlevel sets {U >= t} = B(0, rho_t); in the disk the matching set is
  // bounded by the Apollonius circle |M| = rho_t / r.
  const double top = U.values.front();
  for (int k = 1; k <= 5; ++k) {
    const double t = top * k / 6.0;
    if (!(t > 0.0)) break;
    double lo = 0.0, hi = r;
    for (int it = 0; it < 200 && hi - lo > 1e-16 * r; ++it) {
      const double mid = 0.5 * (lo + hi);
      (U.value_at(mid) >= t ? lo : hi) = mid;
    }
    const double rho_t = 0.5 * (lo + hi);
    const double c = rho_t / r;
    // Disk side: flux of the potential ln|M| / ln c through |M| = c.
    const double centre = a * (1.0 - c * c) / (1.0 - c * c * a * a);
    const double radius = c * (1.0 - a * a) / (1.0 - c * c * a * a);
    const double flux = quad::integrate(
        [&](double phi) {
          const double yr = centre + radius * std::cos(phi);
          const double yi = radius * std::sin(phi);
          const double dr = 1.0 - a * yr;
          const double di = -a * yi;
          const double dM = (1.0 - a * a) / (dr * dr + di * di);
          return radius * dM / (c * std::abs(std::log(c)));
        },
        0.0, 2.0 * kPi, 0.0, 1e-13);
    rep.levels.push_back(t);
    rep.level_cap_disk.push_back(flux);
    rep.level_cap_ball.push_back(2.0 * kPi / std::log(r / rho_t));
    rep.level_cap_gap = std::max(rep.level_cap_gap, std::abs(flux - rep.level_cap_ball.back()));
  }
  return rep;
}

}  // namespace onofri
