#pragma once

// Radial solutions of -Delta_n v = e^v on B(0, R) by shooting from the
// origin, and the mean-field branch obtained from them on the unit ball:
// with lambda = e^{v(1)} and u = v - v(1), u solves -Delta_n u = lambda e^u,
// u = 0 on the boundary, with mass lambda * int e^u = omega * m(1).

#include <optional>
#include <string>
#include <vector>

#include "onofri/profile.hpp"

namespace onofri {

struct ShootOptions {
  double ode_tol = 1e-10;
  // Dense samples added inside every accepted step (for interpolation and
  // quadrature on the stored profile).
  int samples_per_step = 3;
};

struct BranchPoint {
  int n = 0;
  double peak_v = 0.0;  // v(0)
  double lambda = 0.0;  // e^{v(1)}
  double mass = 0.0;    // omega * m(1) = lambda * int_B e^u
  double peak_u = 0.0;  // u(0) = peak_v - ln lambda
  double energy_J = 0.0;  // J_rho(u) at rho = mass
  double pohozaev_residual = 0.0;
  RadialProfile profile;  // u on [0, 1]
};

struct PointFailure {
  double peak = 0.0;
  std::string message;
};

struct SolutionBranch {
  int n = 0;
  std::vector<BranchPoint> points;  // ascending peak_v
  std::vector<PointFailure> failures;
};

struct BubbleRescaling {
  double epsilon = 0.0;
  RadialProfile eta;          // eta(r) = u(eps r) - peak_u + ln beta_n
  double sup_deviation = 0.0;  // max |eta - eta0| over the sampled range
  bool in_blowup_regime = false;
};

// Integrates (r^{n-1} (-v')^{n-1})' = r^{n-1} e^v, v(0) = peak, v'(0) = 0 to
// r_end in the variable s = ln r on the system
//   dv/ds = -m^{1/(n-1)},   dm/ds = exp(n s + v),   m = r^{n-1} (-v')^{n-1},
// starting from the two-term series at a small r0. Throws BlowUpError if the
// integration breaks down.
RadialProfile shoot(int n, double peak, double r_end, double ode_tol);
RadialProfile shoot(int n, double peak, double r_end, const ShootOptions& opts);

// Radius where the shooting starts: min(1e-6 r_end, 1e-6 eps), with
// eps = (beta_n e^{-peak})^{1/n} the bubble scale.
double shooting_start_radius(int n, double peak, double r_end);

BranchPoint branch_point(int n, double peak, double ode_tol);

// Evaluates every peak (concurrently, up to ONOFRI_LAB_THREADS workers);
// failures are recorded per point.
SolutionBranch scan_branch(int n, const std::vector<double>& peaks, double ode_tol);

// |LHS - RHS| / max(|LHS|, |RHS|) for the radial Pohozaev identity
//   omega |u'(1)|^n = (n^2/(n-1)) (rho / int e^u) int_B (e^u - 1),
// integrals by quadrature on the stored profile, rho = point.mass.
double pohozaev_residual(const BranchPoint& point);

struct PohozaevSides {
  double lhs = 0.0;
  double rhs = 0.0;
};
PohozaevSides pohozaev_sides(const BranchPoint& point);

// Blow-up rescaling around the peak. `radius_cap` bounds the sampled range
// [0, min(radius_cap, 1/eps)].
BubbleRescaling rescale_to_bubble(const BranchPoint& point, double radius_cap = 10.0);

// Least-squares slope of eta against -ln r on [lo, hi] using the nodes of the
// rescaled profile. Throws DomainError if the range leaves [0, 1/eps] and
// InsufficientDataError with fewer than 4 nodes in range.
double farfield_slope(const BranchPoint& point, double lo, double hi);

// Same fit on an arbitrary profile (e.g. eta0 itself).
double farfield_slope(const RadialProfile& eta, double lo, double hi);

}  // namespace onofri
