#include "onofri/radial_ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "onofri/constants.hpp"
#include "onofri/dopri.hpp"
#include "onofri/errors.hpp"
#include "onofri/functional.hpp"
#include "onofri/parallel.hpp"

namespace onofri {

namespace {

struct Shot {
  RadialProfile profile;
  double flux_end = 0.0;  // m(r_end)
};

double flux_power(double m, double nd) {
  m = std::max(m, 0.0);
  return nd == 2.0 ? m : std::pow(m, 1.0 / (nd - 1.0));
}

Shot shoot_with_flux(int n, double peak, double r_end, const ShootOptions& opts) {
  require_dimension(n);
  if (!(opts.ode_tol > 0.0)) throw DomainError("shoot: ode_tol must be positive");
  if (!std::isfinite(peak)) throw DomainError("shoot: peak must be finite");
  if (!(r_end > 0.0)) throw DomainError("shoot: r_end must be positive");

  const double nd = n;
  const double r0 = shooting_start_radius(n, peak, r_end);
  const double log_r0 = std::log(r0);
  // Series at the origin: m = e^c r^n / n, v = c - ((n-1)/n)(e^c/n)^{1/(n-1)} r^{n/(n-1)}.
  const double m0 = std::exp(peak + nd * log_r0) / nd;
  const double v0 =
      peak - (nd - 1.0) / nd *
                 std::exp((peak - std::log(nd)) / (nd - 1.0) + nd / (nd - 1.0) * log_r0);

  Shot shot;
  RadialProfile& p = shot.profile;
  p.grid_kind = GridKind::graded;
  p.domain_radius = r_end;
  auto push = [&p](double r, double v, double dv) {
    p.nodes.push_back(r);
    p.values.push_back(v);
    p.derivs.push_back(dv);
  };
  push(0.0, peak, 0.0);
  push(r0, v0, -flux_power(m0, nd) / r0);

  auto rhs = [nd](double s, const ode::State<2>& y) {
    return ode::State<2>{-flux_power(y[1], nd), std::exp(nd * s + y[0])};
  };

  ode::DopriOptions<2> dopts;
  dopts.rtol = opts.ode_tol;
  dopts.atol = {opts.ode_tol, 0.0};
  dopts.initial_step = 1e-2;
  dopts.max_step = 0.25;

  const int samples = std::max(0, opts.samples_per_step);
  auto observer = [&](const ode::DopriStep<2>& step) {
    for (int k = 1; k <= samples; ++k) {
      const double s = step.t0 + (step.t1 - step.t0) * k / (samples + 1.0);
      const ode::State<2> y = step.at(s);
      const double r = std::exp(s);
      push(r, y[0], -flux_power(y[1], nd) / r);
    }
    const double r = std::exp(step.t1);
    push(r, step.y1[0], -flux_power(step.y1[1], nd) / r);
  };

  const double log_end = std::log(r_end);
  const auto result = ode::dopri5<2>(rhs, log_r0, ode::State<2>{v0, m0}, log_end, dopts, observer);
  if (result.status != ode::DopriStatus::reached_end) {
    const double reached = std::exp(result.t);
    std::ostringstream msg;
    msg << "radial integration with peak " << peak << " broke down at r = " << reached;
    throw BlowUpError(msg.str(), reached);
  }
  // Pin the final radius exactly; exp(log(r_end)) can be off by an ulp.
  p.nodes.back() = r_end;
  p.derivs.back() = -flux_power(result.y[1], nd) / r_end;
  shot.flux_end = result.y[1];
  for (std::size_t i = 1; i < p.nodes.size(); ++i) {
    if (!(p.nodes[i] > p.nodes[i - 1])) {
      throw BlowUpError("radial integration produced a degenerate radial grid", p.nodes[i]);
    }
  }
  return shot;
}

}  // namespace

double shooting_start_radius(int n, double peak, double r_end) {
  const double nd = n;
  const double beta = bundle(n).beta;
  const double eps = std::exp((std::log(beta) - peak) / nd);
  return std::min(1e-6 * r_end, 1e-6 * eps);
}

RadialProfile shoot(int n, double peak, double r_end, double ode_tol) {
  ShootOptions opts;
  opts.ode_tol = ode_tol;
  return shoot(n, peak, r_end, opts);
}

RadialProfile shoot(int n, double peak, double r_end, const ShootOptions& opts) {
  return shoot_with_flux(n, peak, r_end, opts).profile;
}

BranchPoint branch_point(int n, double peak, double ode_tol) {
  ShootOptions opts;
  opts.ode_tol = ode_tol;
  Shot shot = shoot_with_flux(n, peak, 1.0, opts);
  const double omega = sphere_measure(n);

  BranchPoint point;
  point.n = n;
  point.peak_v = peak;
  const double v1 = shot.profile.values.back();
  point.lambda = std::exp(v1);
  point.peak_u = peak - v1;
  point.mass = omega * shot.flux_end;
  point.profile = std::move(shot.profile);
  for (double& v : point.profile.values) v -= v1;
  point.profile.values.back() = 0.0;
  point.energy_J = onofri_energy(n, point.mass, point.profile);
  point.pohozaev_residual = pohozaev_residual(point);
  return point;
}

SolutionBranch scan_branch(int n, const std::vector<double>& peaks, double ode_tol) {
  require_dimension(n);
  if (peaks.empty()) throw DomainError("scan_branch: no peaks given");
  std::vector<double> sorted = peaks;
  std::sort(sorted.begin(), sorted.end());
  for (double c : sorted) {
    if (!std::isfinite(c)) throw DomainError("scan_branch: peaks must be finite");
  }

  std::vector<std::optional<BranchPoint>> solved(sorted.size());
  std::vector<std::string> errors(sorted.size());
  parallel_for(sorted.size(), [&](std::size_t i) {
    try {
      solved[i] = branch_point(n, sorted[i], ode_tol);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });

  SolutionBranch branch;
  branch.n = n;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (solved[i]) {
      branch.points.push_back(std::move(*solved[i]));
    } else {
      branch.failures.push_back({sorted[i], errors[i]});
    }
  }
  return branch;
}

PohozaevSides pohozaev_sides(const BranchPoint& point) {
  const int n = point.n;
  require_dimension(n);
  const RadialProfile& u = point.profile;
  if (std::abs(u.nodes.back() - 1.0) > 1e-12 || std::abs(u.values.back()) > 1e-12) {
    throw DomainError("pohozaev_residual: profile must reach r = 1 with u(1) = 0");
  }
  const double nd = n;
  const double omega = sphere_measure(n);
  const double slope = std::abs(u.derivs.back());

  PohozaevSides sides;
  sides.lhs = omega * std::pow(slope, nd);
  if (point.mass == 0.0) return sides;

  // int_B e^u, factored as e^{umax} * int r^{n-1} e^{u - umax} to stay finite.
  const double umax = *std::max_element(u.values.begin(), u.values.end());
  const double scaled = integrate_profile(u, [nd, umax](double r, double val, double) {
    return std::pow(r, nd - 1.0) * std::exp(val - umax);
  });
  // rho / int e^u * int (e^u - 1) = rho * (1 - |B| / int e^u)
  const double ball_volume_ratio = (1.0 / nd) * std::exp(-umax) / scaled;
  sides.rhs = nd * nd / (nd - 1.0) * point.mass * (1.0 - ball_volume_ratio);
  return sides;
}

double pohozaev_residual(const BranchPoint& point) {
  const PohozaevSides s = pohozaev_sides(point);
  const double scale = std::max(std::abs(s.lhs), std::abs(s.rhs));
  if (scale == 0.0) return 0.0;
  return std::abs(s.lhs - s.rhs) / scale;
}

BubbleRescaling rescale_to_bubble(const BranchPoint& point, double radius_cap) {
  const int n = point.n;
  const DimensionConstants c = bundle(n);
  const double nd = n;
  if (!(point.lambda > 0.0)) throw DomainError("rescale_to_bubble: lambda must be positive");
  if (!(radius_cap > 0.0)) throw DomainError("rescale_to_bubble: radius cap must be positive");
  const double log_beta = std::log(c.beta);

  BubbleRescaling out;
  out.epsilon = std::exp((log_beta - std::log(point.lambda) - point.peak_u) / nd);
  out.in_blowup_regime =
      out.epsilon < 1.0 && std::abs(point.mass - c.c_crit) <= 0.2 * c.c_crit;

  const double upper = std::min(radius_cap, 1.0 / out.epsilon);
  const double r_limit = std::min(out.epsilon * upper, point.profile.domain_radius);
  const RadialProfile& u = point.profile;
  RadialProfile& eta = out.eta;
  eta.grid_kind = u.grid_kind;
  for (std::size_t i = 0; i < u.size() && u.nodes[i] < r_limit * (1.0 - 1e-13); ++i) {
    eta.nodes.push_back(u.nodes[i] / out.epsilon);
    eta.values.push_back(u.values[i] - point.peak_u + log_beta);
    eta.derivs.push_back(u.derivs[i] * out.epsilon);
  }
  eta.nodes.push_back(r_limit / out.epsilon);
  eta.values.push_back(u.value_at(r_limit) - point.peak_u + log_beta);
  eta.derivs.push_back(u.deriv_at(r_limit) * out.epsilon);
  eta.domain_radius = eta.nodes.back();

  double dev = 0.0;
  for (std::size_t i = 0; i < eta.size(); ++i) {
    dev = std::max(dev, std::abs(eta.values[i] - bubble_value(n, eta.nodes[i])));
    if (i + 1 < eta.size()) {
      const double mid = 0.5 * (eta.nodes[i] + eta.nodes[i + 1]);
      dev = std::max(dev, std::abs(eta.value_at(mid) - bubble_value(n, mid)));
    }
  }
  out.sup_deviation = dev;
  return out;
}

double farfield_slope(const RadialProfile& eta, double lo, double hi) {
  if (!(lo > 0.0) || !(hi > lo)) throw DomainError("farfield_slope: need 0 < lo < hi");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < eta.size(); ++i) {
    const double r = eta.nodes[i];
    if (r < lo || r > hi) continue;
    const double x = -std::log(r);
    const double y = eta.values[i];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 4) {
    std::ostringstream msg;
    msg << "farfield_slope: only " << count << " nodes in [" << lo << ", " << hi << "]";
    throw InsufficientDataError(msg.str());
  }
  const double k = static_cast<double>(count);
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

double farfield_slope(const BranchPoint& point, double lo, double hi) {
  const BubbleRescaling resc =
      rescale_to_bubble(point, std::numeric_limits<double>::infinity());
  const double reach = 1.0 / resc.epsilon;
  if (!(lo > 0.0) || hi > reach * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "farfield_slope: fit range [" << lo << ", " << hi << "] leaves [0, 1/eps = " << reach
        << "]";
    throw DomainError(msg.str());
  }
  return farfield_slope(resc.eta, lo, hi);
}

}  // namespace onofri
