#include "onofri/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "onofri/capacity.hpp"
#include "onofri/constants.hpp"
#include "onofri/errors.hpp"
#include "onofri/functional.hpp"
#include "onofri/harmonic_radius.hpp"
#include "onofri/minimizer.hpp"
#include "onofri/parallel.hpp"
#include "onofri/radial_ode.hpp"

namespace onofri {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kOdeTol = 1e-10;

// Shooting height whose rescaled bubble has scale eps.
double peak_for_epsilon(int n, double eps) {
  return std::log(bundle(n).beta) - n * std::log(eps);
}

// Shooting height whose branch mass is frac * C_n (every shooting solution
// is an exactly rescaled bubble, mass C_n (T/(1+T))^{n-1}, T = eps^{-n/(n-1)}).
double peak_for_mass_fraction(int n, double frac) {
  const double nd = n;
  const double q = std::pow(frac, 1.0 / (nd - 1.0));
  const double T = q / (1.0 - q);
  return peak_for_epsilon(n, std::pow(T, -(nd - 1.0) / nd));
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(10);
  s << v;
  return s.str();
}

struct Shared {
  int n = 2;
  VerifyLevel level = VerifyLevel::quick;
  std::optional<SolutionBranch> branch;
  std::string branch_error;
  double branch_seconds = 0.0;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

CheckResult check_sharp_n(const Shared& s) {
  CheckResult c{1, "sharp constant, quadrature vs closed form", false, 0, 0, 1e-8, "", 0};
  const auto t0 = Clock::now();
  const SharpConstant sc = sharp_constant(s.n, 1e-10);
  c.seconds = seconds_since(t0);
  c.measured = sc.by_quadrature;
  c.target = sc.by_closed_form;
  double gap = std::abs(sc.by_quadrature - sc.by_closed_form);
  if (s.n == 2) gap = std::max(gap, std::abs(sc.by_quadrature - (-1.0 - std::log(kPi))));
  c.passed = gap <= c.tolerance && c.seconds < 1.0;
  c.detail = "n=" + std::to_string(s.n) + " |diff|=" + fmt(gap) + " runtime " + fmt(c.seconds) + " s";
  return c;
}

CheckResult check_sharp_range(const Shared& s) {
  CheckResult c{2, "sharp constant, n = 3..6", false, 0, 0, 1e-8, "", 0};
  const int top = s.level == VerifyLevel::full ? 10 : 6;
  double worst = 0.0;
  for (int n = 3; n <= top; ++n) {
    const SharpConstant sc = sharp_constant(n, 1e-10);
    const double closed = std::log(n / sphere_measure(n)) - harmonic_number(n - 1);
    worst = std::max(worst, std::abs(sc.by_quadrature - closed));
  }
  c.measured = worst;
  c.passed = worst <= c.tolerance;
  c.detail = "max |quadrature - closed form| over n=3.." + std::to_string(top);
  return c;
}

CheckResult check_quantization(const Shared& s) {
  CheckResult c{3, "blow-up mass quantization", false, 0, 0, 0, "", s.branch_seconds};
  if (!s.branch) throw NumericalError(s.branch_error);
  const SolutionBranch& b = *s.branch;
  const double C = bundle(s.n).c_crit;
  c.target = C;
  if (!b.failures.empty()) c.detail = std::to_string(b.failures.size()) + " failed peaks; ";
  if (b.points.empty()) throw NumericalError("branch scan produced no points");
  bool increasing = true;
  for (std::size_t i = 1; i < b.points.size(); ++i)
    increasing = increasing && b.points[i].mass > b.points[i - 1].mass;
  const double last = b.points.back().mass;
  bool below = true;
  for (const auto& p : b.points) below = below && p.mass < C;
  c.measured = last;
  if (s.n == 2) {
    c.tolerance = 1e-6;
    double worst = 0.0;
    for (const auto& p : b.points) {
      const double delta = std::exp(p.peak_v) / 8.0;
      const double oracle = 8.0 * kPi * delta / (1.0 + delta);
      worst = std::max(worst, std::abs(p.mass - oracle) / oracle);
    }
    c.passed = worst <= c.tolerance && increasing && below && b.points.size() == 7 &&
               std::abs(last - C) <= 0.01 * C && c.seconds < 30.0;
    c.detail += "max rel err vs 8 pi d/(1+d) " + fmt(worst) + ", final mass/C " + fmt(last / C);
  } else {
    c.tolerance = 0.01 * C;
    c.passed = below && std::abs(last - C) <= c.tolerance && c.seconds < 30.0;
    c.detail += "largest solved peak " + fmt(b.points.back().peak_v) + ", mass/C " + fmt(last / C);
  }
  c.detail += ", runtime " + fmt(c.seconds) + " s";
  return c;
}

CheckResult check_pohozaev(const Shared& s) {
  CheckResult c{4, "Pohozaev residual on branch points", false, 0, 0, 1e-6, "", 0};
  if (!s.branch) throw NumericalError(s.branch_error);
  double worst = 0.0;
  for (const auto& p : s.branch->points) worst = std::max(worst, p.pohozaev_residual);
  c.measured = worst;
  c.passed = !s.branch->points.empty() && worst <= c.tolerance;
  c.detail = std::to_string(s.branch->points.size()) + " points, ode_tol 1e-10";
  return c;
}

CheckResult check_rescaling(const Shared& s) {
  const int n = s.n;
  const double nd = n;
  const double target = nd * nd / (nd - 1.0);
  CheckResult c{5, "bubble rescaling and far-field slope", false, 0, target, 0.05 * target, "", 0};

  // Sup deviation on [0, 10].
  const double dev_peak = n == 2 ? std::log(8.0e3) : peak_for_epsilon(n, 1.0 / 60.0);
  const BranchPoint p_dev = branch_point(n, dev_peak, kOdeTol);
  const BubbleRescaling resc = rescale_to_bubble(p_dev, 10.0);
  const bool dev_ok = resc.in_blowup_regime && resc.sup_deviation <= 0.02;

  // Far-field fit range and a point reaching past it.
  double lo = 5.0, hi = 30.0, fit_peak = 0.0;
  if (n == 2) {
    hi = 50.0;
    fit_peak = std::log(8.0e4);
  } else if (n == 3) {
    fit_peak = peak_for_epsilon(n, 1.0 / 60.0);
  } else {
    lo = std::pow(40.0, (nd - 1.0) / nd);
    hi = 6.0 * lo;
    fit_peak = std::max(peak_for_epsilon(n, 1.0 / (2.0 * hi)), peak_for_mass_fraction(n, 0.995));
  }
  const BranchPoint p_fit = branch_point(n, fit_peak, kOdeTol);
  const double slope = farfield_slope(p_fit, lo, hi);
  const bool mass_ok = std::abs(p_fit.mass - bundle(n).c_crit) <= 0.01 * bundle(n).c_crit;
  bool slope_ok = std::abs(slope - target) <= c.tolerance;
  if (n == 2) slope_ok = slope_ok && slope >= 3.8 && slope <= 4.0;
  c.measured = slope;
  c.passed = dev_ok && slope_ok && mass_ok;
  c.detail = "sup deviation on [0,10] " + fmt(resc.sup_deviation) + " (eps " +
             fmt(resc.epsilon) + "), slope on [" + fmt(lo) + "," + fmt(hi) + "] " + fmt(slope);
  return c;
}

CheckResult check_concentration(const Shared& s) {
  CheckResult c{6, "concentration limit of the test family", false, 0, 0, 1e-3, "", 0};
  const ConcentrationLimit lim = concentration_limit(s.n, {1e-1, 1e-2, 1e-3, 1e-4}, 1e-10);
  const double sharp = sharp_constant_closed_form(s.n);
  bool tail_decreasing = true;
  for (std::size_t i = 2; i < lim.values.size(); ++i)
    tail_decreasing = tail_decreasing && lim.values[i] < lim.values[i - 1];
  c.measured = lim.extrapolated;
  c.target = sharp;
  c.passed = std::abs(lim.extrapolated - sharp) <= c.tolerance && tail_decreasing;
  c.detail = "J(Phi_1e-4) " + fmt(lim.values.back()) + ", tail decreasing " +
             (tail_decreasing ? "yes" : "no") + "; " + lim.note;
  return c;
}

MinimizeOptions minimize_options(int grid) {
  MinimizeOptions o;
  o.grid_size = static_cast<std::size_t>(grid);
  return o;
}

CheckResult check_minimizer(const Shared& s) {
  const int n = s.n;
  const DimensionConstants dc = bundle(n);
  const double sharp = sharp_constant_closed_form(n);
  CheckResult c{7, "subcritical minimizer vs shooting", false, 0, 0, 0, "", 0};
  const int grid = s.level == VerifyLevel::full ? 1024 : 512;
  const double rho = n == 2 ? 4.0 * kPi : 0.5 * dc.c_crit;
  const MinimizeResult m = minimize_subcritical(n, rho, minimize_options(grid));
  const double peak = n == 2 ? std::log(8.0) : peak_for_mass_fraction(n, 0.5);
  const BranchPoint shot = branch_point(n, peak, kOdeTol);
  double gap = 0.0;
  for (std::size_t i = 0; i < m.profile.size(); ++i)
    gap = std::max(gap, std::abs(m.profile.values[i] - shot.profile.value_at(m.profile.nodes[i])));
  const double dJ = std::abs(m.J_value - shot.energy_J);
  bool lower_ok = m.J_value >= sharp - 1e-6;
  for (double f : {0.1, 0.9, 0.99}) {
    const MinimizeResult mf = minimize_subcritical(n, f * dc.c_crit, minimize_options(grid));
    lower_ok = lower_ok && mf.J_value >= sharp - 1e-6;
  }
  c.measured = dJ;
  c.target = 0.0;
  if (n == 2) {
    c.tolerance = 1e-4;
    c.passed = m.converged && dJ <= 1e-4 && gap <= 1e-3 && lower_ok;
  } else {
    c.tolerance = 1e-3;
    c.passed = m.converged && m.el_residual <= 1e-6 && dJ <= 1e-3 && lower_ok;
  }
  c.detail = "rho " + fmt(rho) + ", |dJ| " + fmt(dJ) + ", sup gap " + fmt(gap) +
             ", el_residual " + fmt(m.el_residual) + ", J >= C(n) - 1e-6 on tested rho: " +
             (lower_ok ? "yes" : "no");
  return c;
}

CheckResult check_blowup(const Shared& s) {
  const int n = s.n;
  const DimensionConstants dc = bundle(n);
  const double sharp = sharp_constant_closed_form(n);
  CheckResult c{8, "blow-up trace toward C_n", false, 0, sharp, 0, "", 0};
  const std::vector<double> rhos = {0.9 * dc.c_crit, 0.99 * dc.c_crit, 0.999 * dc.c_crit};
  const auto trace = trace_blowup(n, rhos, minimize_options(s.level == VerifyLevel::full ? 1024 : 512));
  bool ok = trace.size() == rhos.size();
  std::ostringstream d;
  d.precision(8);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    ok = ok && trace[i].converged && trace[i].J_value > sharp;
    if (i > 0) {
      ok = ok && trace[i].peak > trace[i - 1].peak && trace[i].J_value < trace[i - 1].J_value;
    }
    d << "rho/C=" << rhos[i] / dc.c_crit << " peak=" << trace[i].peak << " J=" << trace[i].J_value
      << "; ";
  }
  c.measured = trace.empty() ? std::numeric_limits<double>::quiet_NaN() : trace.back().J_value;
  c.passed = ok;
  c.detail = d.str();
  return c;
}

CheckResult check_capacity(const Shared& s) {
  CheckResult c{9, "capacity potential energy and modulus shift", false, 0, 0, 1e-10, "", 0};
  double worst = 0.0;
  const int top = s.level == VerifyLevel::full ? 8 : 5;
  for (int n = 2; n <= top; ++n) {
    for (auto [r, rho] : {std::pair{1.0, 0.5}, {2.0, 0.1}, {1.0, 1e-3}, {5.0, 4.0}}) {
      for (double t : {0.5, 1.0, 3.0}) {
        const AnnulusSpec spec{n, r, rho, t};
        const double closed = sphere_measure(n) * std::pow(t, n) * std::pow(std::log(r / rho), 1.0 - n);
        const double quadr = capacity_potential_energy(spec, 1e-13);
        worst = std::max(worst, std::abs(quadr - closed) / closed);
      }
    }
  }
  double shift = 0.0;
  shift = std::max(shift, modulus_shift_check(2, 1.0, 2.0, {0.1}));
  shift = std::max(shift, modulus_shift_check(4, 1.0, 3.0, {1e-3}));
  shift = std::max(shift, modulus_shift_check(s.n, 1.0, 2.0, {0.5, 0.1, 1e-2, 1e-3}));
  shift = std::max(shift, modulus_shift_check(s.n, 1.5, 1.5, {1e-1}));
  c.measured = worst;
  c.passed = worst <= 1e-10 && shift <= 1e-12;
  c.detail = "max relative energy error " + fmt(worst) + ", max modulus shift deviation " + fmt(shift);
  return c;
}

CheckResult check_harmonic_radius(const Shared&) {
  CheckResult c{10, "disk harmonic radius and concentration level", false, 0, 0, 1e-12, "", 0};
  const double offsets[] = {0.0, 0.25, 0.5, 0.9};
  const double radii[] = {1.0, 0.9375, 0.75, 0.19};
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    worst = std::max(worst, std::abs(harmonic_radius_disk(offsets[i]).harmonic_radius - radii[i]));
  const double level = concentration_level(2, DomainSpec::disk(0.5));
  const double expect = -1.0 - std::log(kPi) - 2.0 * std::log(0.75);
  c.measured = level;
  c.target = expect;
  c.passed = worst <= 4.0 * std::numeric_limits<double>::epsilon() &&
             std::abs(level - expect) <= c.tolerance;
  c.detail = "max radius error " + fmt(worst) + ", level error " + fmt(std::abs(level - expect));
  return c;
}

CheckResult check_transplant(const Shared&) {
  CheckResult c{11, "harmonic transplantation onto the disk, a = 0.5", false, 0, 1.0, 1e-6, "", 0};
  const double a = 0.5;
  const double r = 1.0 - a * a;
  const double L = 0.2;
  // Truncated bubble 2 ln(1 + (r/L)^2) - 2 ln(1 + (rho/L)^2) on B(0, r).
  RadialProfile U = sample_profile(
      log_grid(1e-6, r, 32),
      [&](double rho) { return 2.0 * (std::log1p((r / L) * (r / L)) - std::log1p((rho / L) * (rho / L))); },
      [&](double rho) { return -4.0 * rho / (L * L + rho * rho); }, GridKind::graded);
  U.values.back() = 0.0;
  U.domain_radius = r;
  const TransplantReport t = transplant_check(a, U);
  c.measured = t.volume_ratio;
  c.passed = t.energy_gap <= 1e-6 && t.volume_ratio >= 1.0 - 1e-8 && t.level_cap_gap <= 1e-8;
  c.detail = "energy gap " + fmt(t.energy_gap) + " (ball " + fmt(t.energy_ball) +
             "), volume ratio " + fmt(t.volume_ratio) + ", level capacity gap " + fmt(t.level_cap_gap);
  return c;
}

}  // namespace

bool VerifyReport::all_passed() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

VerifyReport verify_all(int n, VerifyLevel level) {
  require_dimension(n);
  Shared shared;
  shared.n = n;
  shared.level = level;

  std::vector<double> peaks;
  if (n == 2) {
    for (int k = 0; k <= 6; ++k) peaks.push_back(std::log(8.0 * std::pow(10.0, k)));
  } else {
    peaks = {0.0, 5.0, 10.0, 20.0, 30.0};
    if (level == VerifyLevel::full) peaks.insert(peaks.end(), {15.0, 25.0, 40.0});
    peaks.push_back(peak_for_mass_fraction(n, 0.999));
  }
  const auto t0 = Clock::now();
  try {
    shared.branch = scan_branch(n, peaks, kOdeTol);
  } catch (const std::exception& e) {
    shared.branch_error = e.what();
  }
  shared.branch_seconds = seconds_since(t0);

  const std::vector<std::function<CheckResult(const Shared&)>> checks = {
      check_sharp_n,   check_sharp_range, check_quantization, check_pohozaev,
      check_rescaling, check_concentration, check_minimizer,  check_blowup,
      check_capacity,  check_harmonic_radius, check_transplant};

  VerifyReport report;
  report.n = n;
  report.level = level;
  report.checks.resize(checks.size());
  parallel_for(checks.size(), [&](std::size_t i) {
    const auto start = Clock::now();
    CheckResult r;
    try {
      r = checks[i](shared);
    } catch (const std::exception& e) {
      r.id = static_cast<int>(i) + 1;
      r.name = "check " + std::to_string(i + 1);
      r.passed = false;
      r.detail = std::string("error: ") + e.what();
    }
    if (r.seconds == 0.0) r.seconds = seconds_since(start);
    report.checks[i] = r;
  });
  return report;
}

}  // namespace onofri
