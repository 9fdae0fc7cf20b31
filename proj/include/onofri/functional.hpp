#pragma once

// The Moser-Onofri functional on radial profiles of the unit ball,
//   J_rho(u) = (1/(n rho)) int_B |grad u|^n - ln int_B e^u,
// and the concentrating test family Phi_L = eta0(x/L) - eta0(1/L).

#include <string>
#include <vector>

#include "onofri/profile.hpp"

namespace onofri {

struct BubbleSpec {
  int n = 2;
  double L = 1.0;  // scale, 0 < L <= 1

  void validate() const;
};

double onofri_energy(int n, double rho, const RadialProfile& profile);

// The two integrals behind onofri_energy, omega-weighted.
struct EnergyParts {
  double dirichlet = 0.0;       // int_B |grad u|^n
  double log_exp_integral = 0.0;  // ln int_B e^u
};
EnergyParts energy_parts(int n, const RadialProfile& profile);

// Phi_L(radius) = eta0(radius/L) - eta0(1/L) for radius in [0, 1].
double test_function(const BubbleSpec& spec, double radius);
double test_function_slope(const BubbleSpec& spec, double radius);

// Phi_L sampled on a log-graded grid clustered at the origin and around
// r ~ L (nodes_per_decade points per factor of ten, down to 1e-6 L).
RadialProfile test_function_profile(const BubbleSpec& spec, std::size_t nodes_per_decade = 256);

enum class LimitFit { none, power, power_log, power_quadratic };

struct ConcentrationLimit {
  std::vector<double> L;
  std::vector<double> values;  // J_{C_n}(Phi_L)
  double extrapolated = 0.0;
  LimitFit fit = LimitFit::none;
  bool reliable = false;  // false for a single L
  std::string note;
};

// values[i] = J_{C_n}(Phi_{L_i}); the limit L -> 0 is extrapolated by
// least-squares fits in x = L^{n/(n-1)}: linear in x, linear in x |ln L|,
// and (with at least four L) quadratic in x. The fit whose intercept moves
// least when the coarsest L is dropped is kept.
// Throws ConvergenceError when successive differences fail to contract.
ConcentrationLimit concentration_limit(int n, const std::vector<double>& L_list, double quad_tol);

}  // namespace onofri
