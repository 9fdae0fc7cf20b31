#include "onofri/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <memory>
#include <sstream>

#include "onofri/errors.hpp"

namespace onofri::quad {

namespace {

double trampoline(double x, void* params) {
  return (*static_cast<const Integrand*>(params))(x);
}

// GSL's default handler aborts; status codes are checked instead.
void disable_gsl_abort() {
  static const bool once = [] {
    gsl_set_error_handler_off();
    return true;
  }();
  (void)once;
}

struct WorkspaceDeleter {
  void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};

}  // namespace

QuadResult gauss_kronrod(const Integrand& f, double a, double b, double abs_tol,
                         double rel_tol, int max_intervals) {
  disable_gsl_abort();
  QuadResult result;
  if (a == b) {
    result.converged = true;
    return result;
  }
  if (max_intervals < 1) throw DomainError("gauss_kronrod: max_intervals must be positive");
  std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> ws(
      gsl_integration_workspace_alloc(static_cast<std::size_t>(max_intervals)));
  gsl_function fn;
  fn.function = &trampoline;
  fn.params = const_cast<Integrand*>(&f);
  const int status = gsl_integration_qag(&fn, a, b, abs_tol, rel_tol,
                                         static_cast<std::size_t>(max_intervals),
                                         GSL_INTEG_GAUSS15, ws.get(), &result.value,
                                         &result.abs_error);
  result.intervals = static_cast<int>(ws->size);
  result.evaluations = 15 * result.intervals;
  result.converged = status == GSL_SUCCESS;
  return result;
}

double integrate(const Integrand& f, double a, double b, double abs_tol, double rel_tol,
                 int max_intervals) {
  const QuadResult r = gauss_kronrod(f, a, b, abs_tol, rel_tol, max_intervals);
  if (!r.converged) {
    std::ostringstream msg;
    msg << "adaptive quadrature on [" << a << ", " << b << "] did not converge: estimate "
        << r.value << " +- " << r.abs_error << " after " << r.intervals << " intervals";
    throw QuadratureError(msg.str(), r.value, r.abs_error);
  }
  return r.value;
}

GaussRule gauss_legendre(std::size_t points) {
  if (points == 0) throw DomainError("gauss_legendre: need at least one node");
  std::unique_ptr<gsl_integration_glfixed_table, void (*)(gsl_integration_glfixed_table*)> table(
      gsl_integration_glfixed_table_alloc(points), &gsl_integration_glfixed_table_free);
  GaussRule rule;
  rule.nodes.resize(points);
  rule.weights.resize(points);
  for (std::size_t i = 0; i < points; ++i) {
    gsl_integration_glfixed_point(-1.0, 1.0, i, &rule.nodes[i], &rule.weights[i], table.get());
  }
  return rule;
}

const GaussRule& unit_gauss5() {
  static const GaussRule rule = [] {
    GaussRule g = gauss_legendre(5);
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      g.nodes[i] = 0.5 * (g.nodes[i] + 1.0);
      g.weights[i] *= 0.5;
    }
    return g;
  }();
  return rule;
}

}  // namespace onofri::quad
