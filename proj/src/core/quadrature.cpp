#include "quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <memory>
#include <mutex>
#include <string>

#include "error.hpp"

namespace sipkit {

namespace {

void silence_gsl() {
  static std::once_flag once;
  std::call_once(once, [] { gsl_set_error_handler_off(); });
}

double trampoline(double x, void* params) {
  return (*static_cast<const Integrand*>(params))(x);
}

struct WorkspaceDeleter {
  void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};

using Workspace = std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter>;

QuadratureResult check(int status, double value, double error, double abs_tol, double rel_tol,
                       const char* where) {
  if (status != GSL_SUCCESS) {
    // GSL reports roundoff-limited results as failures even when the estimate
    // is inside a slightly looser bound; accept those within 10x.
    const double bound = std::max(abs_tol, rel_tol * std::abs(value));
    if (!(error <= 10.0 * bound))
      fail(ErrorCode::QuadratureNotConverged,
           std::string(where) + ": " + gsl_strerror(status) + " (estimate " +
               std::to_string(value) + " +- " + std::to_string(error) + ")");
  }
  return {value, error};
}

}  // namespace

QuadratureResult integrate(const Integrand& f, double a, double b, double abs_tol,
                           double rel_tol, int limit) {
  silence_gsl();
  if (a == b) return {};
  Workspace ws(gsl_integration_workspace_alloc(static_cast<std::size_t>(limit)));
  gsl_function F{&trampoline, const_cast<Integrand*>(&f)};
  double value = 0.0, error = 0.0;
  const int status = gsl_integration_qag(&F, a, b, abs_tol, rel_tol, static_cast<std::size_t>(limit),
                                         GSL_INTEG_GAUSS21, ws.get(), &value, &error);
  return check(status, value, error, abs_tol, rel_tol, "integrate");
}

QuadratureResult integrate_to_infinity(const Integrand& f, double a, double abs_tol,
                                       double rel_tol, int limit) {
  silence_gsl();
  Workspace ws(gsl_integration_workspace_alloc(static_cast<std::size_t>(limit)));
  gsl_function F{&trampoline, const_cast<Integrand*>(&f)};
  double value = 0.0, error = 0.0;
  const int status = gsl_integration_qagiu(&F, a, abs_tol, rel_tol, static_cast<std::size_t>(limit),
                                           ws.get(), &value, &error);
  return check(status, value, error, abs_tol, rel_tol, "integrate_to_infinity");
}

}  // namespace sipkit
