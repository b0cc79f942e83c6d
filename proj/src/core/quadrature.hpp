#pragma once

#include <functional>

namespace sipkit {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (21-point) on [a, b]. Throws
/// Error(QuadratureNotConverged) when the requested tolerance is not met.
QuadratureResult integrate(const Integrand& f, double a, double b, double abs_tol,
                           double rel_tol = 0.0, int limit = 2000);

/// Same on [a, inf), via the usual x = a + (1-u)/u map.
QuadratureResult integrate_to_infinity(const Integrand& f, double a, double abs_tol,
                                       double rel_tol = 0.0, int limit = 2000);

}  // namespace sipkit
