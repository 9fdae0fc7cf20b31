#pragma once

// Direct minimization of the subcritical functional
//   J_rho(u) = (1/(n rho)) int_B |grad u|^n - ln int_B e^u,   0 < rho < C_n,
// over continuous piecewise-linear radial functions with u(1) = 0.

#include <optional>
#include <variant>
#include <vector>

#include "onofri/profile.hpp"

namespace onofri {

struct ZeroInit {};
struct BubbleInit {
  double L = 0.5;
};
struct ProfileInit {
  RadialProfile profile;
};
using MinimizeInit = std::variant<ZeroInit, BubbleInit, ProfileInit>;

struct MinimizeOptions {
  std::size_t grid_size = 512;  // node count, including r = 0 and r = 1
  GridKind grid_kind = GridKind::graded;
  int max_iters = 1000;  // per regularization stage
  double step_tol = 1e-15;
  double grad_tol = 1e-9;
  double reg = 1e-12;  // |u'|^{n-2} -> (|u'|^2 + reg)^{(n-2)/2} for n > 2
  MinimizeInit init = ZeroInit{};

  void validate() const;
};

struct MinimizeResult {
  RadialProfile profile;  // nodal values, element-averaged slopes as derivs
  double J_value = 0.0;
  double el_residual = 0.0;  // max |dJ/du_i| over free nodes: the Euler-Lagrange
                             // equation divided by rho, tested on hat functions
  int iterations = 0;
  bool converged = false;
  double lambda = 0.0;      // rho / int e^u
  double peak = 0.0;        // u(0)
  double boundary_flux = 0.0;  // omega |u'(1)|^{n-1}, discrete mass
  int gradient_steps = 0;   // iterations that fell back to steepest descent
};

// Throws DomainError for rho outside (0, C_n); non-convergence is reported
// through `converged`, not thrown.
MinimizeResult minimize_subcritical(int n, double rho, const MinimizeOptions& opts);

struct BlowupRecord {
  double rho = 0.0;
  double peak = 0.0;
  double mass = 0.0;
  double epsilon = 0.0;
  double J_value = 0.0;
  double el_residual = 0.0;
  bool converged = false;
};

// Sequential ladder: each rho is reached from the previous solution through
// intermediate rho values spaced geometrically in C_n - rho.
std::vector<BlowupRecord> trace_blowup(int n, const std::vector<double>& rho_list,
                                       const MinimizeOptions& opts);

}  // namespace onofri
