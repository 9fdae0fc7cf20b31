#pragma once

// Robin function and n-harmonic radius where the n-Green function is
// explicit (center of a ball in any dimension, any point of the unit disk
// for n = 2), the concentration level C(n) - n ln rho_Omega(x0), the
// existence test built on it, and a numerical check of harmonic
// transplantation from B(0, 1-a^2) onto the unit disk.

#include <vector>

#include "onofri/profile.hpp"

namespace onofri {

struct DomainSpec {
  enum class Kind { ball, disk };
  Kind kind = Kind::ball;
  int n = 2;
  double radius = 1.0;  // ball radius (kind == ball)
  double offset = 0.0;  // |x0| inside the unit disk (kind == disk)

  static DomainSpec ball(int n, double radius);
  static DomainSpec disk(double offset);

  void validate() const;
};

struct RobinData {
  double green_singular_coeff = 0.0;  // n / alpha_n
  double robin = 0.0;                 // tau(x0)
  double harmonic_radius = 0.0;       // rho(x0) = exp(-tau / coeff)
};

RobinData robin_ball_center(int n, double R);
RobinData harmonic_radius_disk(double a);
RobinData robin_data(const DomainSpec& domain);

// sharp_constant(n) - n ln(rho(x0)). For a ball of radius R this is
// C(n) - n ln R.
double concentration_level(int n, const DomainSpec& domain);

enum class Verdict { achieved, boundary_case };

// achieved when candidate_inf < C(n) - n * sup_log_radius - tol,
// boundary_case when within tol of it. A candidate above the bound cannot
// be an infimum (concentrating sequences already reach the bound) and is
// rejected with DomainError.
Verdict existence_criterion(int n, double candidate_inf, double sup_log_radius,
                            double tol = 1e-12);

const char* to_string(Verdict v);

struct TransplantReport {
  double energy_disk = 0.0;   // int_disk |grad u|^2
  double energy_ball = 0.0;   // int_ball |grad U|^2
  double energy_gap = 0.0;
  double volume_disk = 0.0;   // int_disk e^u
  double volume_ball = 0.0;   // int_ball e^U
  double volume_ratio = 0.0;
  std::vector<double> levels;            // t values of the superlevel check
  std::vector<double> level_cap_disk;    // 2-capacity of {u >= t} in the disk
  std::vector<double> level_cap_ball;    // 2-capacity of {U >= t} in B(0, 1-a^2)
  double level_cap_gap = 0.0;            // max |disk - ball|
};

// n = 2. U is a non-negative, non-increasing radial profile on B(0, r),
// r = 1 - a^2. The transplanted function on the unit disk is
//   u(y) = U(r |M(y)|),  M(y) = (y - a)/(1 - a y),
// i.e. u and U take equal values on equal Green levels around x0 = (a, 0)
// and 0. Disk integrals use polar coordinates about x0 with each ray split
// at the profile nodes. Throws UnsupportedError for a profile that is not
// non-increasing and DomainError for a radius mismatch.
TransplantReport transplant_check(double a, const RadialProfile& U, double quad_tol = 1e-11);

}  // namespace onofri
