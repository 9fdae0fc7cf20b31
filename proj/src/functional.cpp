#include "onofri/functional.hpp"

#include <gsl/gsl_multifit.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "onofri/constants.hpp"
#include "onofri/errors.hpp"

namespace onofri {

namespace {

// Least-squares polynomial fit in x of the given degree via GSL; returns the
// constant coefficient.
double fit_intercept(const std::vector<double>& x, const std::vector<double>& y, int degree) {
  const std::size_t rows = x.size();
  const std::size_t cols = static_cast<std::size_t>(degree) + 1;
  gsl_matrix* X = gsl_matrix_alloc(rows, cols);
  gsl_vector* Y = gsl_vector_alloc(rows);
  gsl_vector* c = gsl_vector_alloc(cols);
  gsl_matrix* cov = gsl_matrix_alloc(cols, cols);
  gsl_multifit_linear_workspace* work = gsl_multifit_linear_alloc(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    double power = 1.0;
    for (std::size_t j = 0; j < cols; ++j) {
      gsl_matrix_set(X, i, j, power);
      power *= x[i];
    }
    gsl_vector_set(Y, i, y[i]);
  }
  double chisq = 0.0;
  gsl_multifit_linear(X, Y, c, cov, &chisq, work);
  const double intercept = gsl_vector_get(c, 0);
  gsl_multifit_linear_free(work);
  gsl_matrix_free(cov);
  gsl_vector_free(c);
  gsl_vector_free(Y);
  gsl_matrix_free(X);
  return intercept;
}

}  // namespace

void BubbleSpec::validate() const {
  require_dimension(n);
  if (!(L > 0.0) || L > 1.0) throw DomainError("bubble scale L must lie in (0, 1]");
}

EnergyParts energy_parts(int n, const RadialProfile& profile) {
  require_dimension(n);
  profile.validate();
  const double nd = n;
  const double omega = sphere_measure(n);
  EnergyParts parts;
  parts.dirichlet = omega * integrate_profile(profile, [nd](double r, double, double du) {
                      return std::pow(r, nd - 1.0) * std::pow(std::abs(du), nd);
                    });
  const double umax = *std::max_element(profile.values.begin(), profile.values.end());
  const double scaled = integrate_profile(profile, [nd, umax](double r, double u, double) {
    return std::pow(r, nd - 1.0) * std::exp(u - umax);
  });
  parts.log_exp_integral = umax + std::log(omega * scaled);
  return parts;
}

double onofri_energy(int n, double rho, const RadialProfile& profile) {
  if (!(rho > 0.0)) throw DomainError("onofri_energy: rho must be positive");
  if (profile.nodes.empty() || std::abs(profile.nodes.back() - 1.0) > 1e-12 ||
      std::abs(profile.domain_radius - 1.0) > 1e-12) {
    throw DomainError("onofri_energy: profile must be defined on [0, 1]");
  }
  const EnergyParts parts = energy_parts(n, profile);
  return parts.dirichlet / (static_cast<double>(n) * rho) - parts.log_exp_integral;
}

double test_function(const BubbleSpec& spec, double radius) {
  spec.validate();
  if (radius < 0.0 || radius > 1.0) throw DomainError("test_function: radius must lie in [0, 1]");
  const double nd = spec.n;
  const double p = nd / (nd - 1.0);
  // The -n ln L shifts cancel in the difference.
  return nd * (std::log1p(std::pow(1.0 / spec.L, p)) - std::log1p(std::pow(radius / spec.L, p)));
}

double test_function_slope(const BubbleSpec& spec, double radius) {
  spec.validate();
  return bubble_slope(spec.n, radius / spec.L) / spec.L;
}

RadialProfile test_function_profile(const BubbleSpec& spec, std::size_t nodes_per_decade) {
  spec.validate();
  const std::vector<double> grid = log_grid(1e-6 * spec.L, 1.0, nodes_per_decade);
  RadialProfile p = sample_profile(
      grid, [&spec](double r) { return test_function(spec, r); },
      [&spec](double r) { return test_function_slope(spec, r); }, GridKind::graded);
  p.values.back() = 0.0;
  p.domain_radius = 1.0;
  return p;
}

ConcentrationLimit concentration_limit(int n, const std::vector<double>& L_list, double quad_tol) {
  require_dimension(n);
  if (L_list.empty()) throw DomainError("concentration_limit: empty L list");
  if (!(quad_tol > 0.0)) throw DomainError("concentration_limit: quad_tol must be positive");
  for (std::size_t i = 0; i < L_list.size(); ++i) {
    if (!(L_list[i] > 0.0) || L_list[i] > 1.0)
      throw DomainError("concentration_limit: every L must lie in (0, 1]");
    if (i > 0 && !(L_list[i] < L_list[i - 1]))
      throw DomainError("concentration_limit: L list must be strictly decreasing");
  }

  const double c_crit = bundle(n).c_crit;
  const auto per_decade = static_cast<std::size_t>(
      std::clamp(std::ceil(64.0 * std::pow(1e-6 / quad_tol, 0.25)), 32.0, 1024.0));

  ConcentrationLimit out;
  out.L = L_list;
  for (double L : L_list) {
    const RadialProfile phi = test_function_profile({n, L}, per_decade);
    out.values.push_back(onofri_energy(n, c_crit, phi));
  }

  if (out.values.size() == 1) {
    out.extrapolated = out.values.front();
    out.fit = LimitFit::none;
    out.reliable = false;
    out.note = "single L: no extrapolation possible";
    return out;
  }

  const std::size_t m = out.values.size();
  if (m >= 3) {
    const double first = std::abs(out.values[0] - out.values[1]);
    const double last = std::abs(out.values[m - 2] - out.values[m - 1]);
    if (last > first && last > 10.0 * quad_tol) {
      std::ostringstream msg;
      msg.precision(10);
      msg << "concentration_limit: sequence not contracting (first step " << first
          << ", last step " << last << ")";
      throw ConvergenceError(msg.str());
    }
  }

  const double nd = n;
  const double p = nd / (nd - 1.0);
  std::vector<double> x_pow, x_log;
  for (double L : L_list) {
    const double x = std::pow(L, p);
    x_pow.push_back(x);
    x_log.push_back(x * std::abs(std::log(L)));
  }

  if (m == 2) {
    out.extrapolated = fit_intercept(x_pow, out.values, 1);
    out.fit = LimitFit::power;
    out.reliable = true;
    out.note = "two-point fit in L^{n/(n-1)}";
    return out;
  }
  auto drop_first = [](const std::vector<double>& v) {
    return std::vector<double>(v.begin() + 1, v.end());
  };
  struct Candidate {
    LimitFit fit;
    const char* label;
    double all;
    double shift;
  };
  const std::vector<double> tail_values = drop_first(out.values);
  std::vector<Candidate> candidates;
  auto add = [&](LimitFit fit, const char* label, const std::vector<double>& x, int degree) {
    const double all = fit_intercept(x, out.values, degree);
    const double tail = fit_intercept(drop_first(x), tail_values, degree);
    candidates.push_back({fit, label, all, std::abs(all - tail)});
  };
  add(LimitFit::power, "power", x_pow, 1);
  add(LimitFit::power_log, "power*log", x_log, 1);
  // The quadratic needs four points so that the tail fit is still
  // overdetermined enough to be compared.
  if (m >= 4) add(LimitFit::power_quadratic, "power quadratic", x_pow, 2);
  const auto best = std::min_element(candidates.begin(), candidates.end(),
                                     [](const Candidate& l, const Candidate& r) {
                                       return l.shift < r.shift;
                                     });
  out.extrapolated = best->all;
  out.fit = best->fit;
  out.reliable = true;
  std::ostringstream note;
  note.precision(3);
  note << "intercept shift on dropping coarsest L:";
  for (const auto& c : candidates) note << " " << c.label << " " << c.shift;
  out.note = note.str();
  return out;
}

}  // namespace onofri
