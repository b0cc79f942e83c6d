#pragma once

#include "difference_chain.hpp"
#include "kernel.hpp"
#include "sticky_bm.hpp"
#include "test_function.hpp"

namespace sipkit {

struct VarianceInputs {
  double rho;
  double sigma;  // second factorial moment of the initial marginal
  double gamma;
  double t;

  /// Poisson initial data: sigma = rho^2.
  static VarianceInputs poisson(double rho, double gamma, double t);
  /// Stationary initial data with parameter k: sigma = rho^2 (k+1)/k.
  static VarianceInputs stationary(double rho, double k, double gamma, double t);
  void validate() const;
};

struct VarianceValue {
  double value = 0.0;
  double error = 0.0;
};

/// E[X_N^2] through the two-particle duality formula, with p_{alpha(N,t)}
/// from the scaled difference chain. Sums run over the grid points of
/// supp phi.
VarianceValue finite_variance(int N, const TestFunction& phi, const VarianceInputs& in,
                              const FiniteRangeKernel& kernel,
                              const TransitionOptions& options = {});

/// h(d) = int phi(x) phi(x + d) dx.
double autocorrelation(const TestFunction& phi, double d);

/// The N -> infinity variance as stated in closed form:
///   -sqrt2 gamma^2 rho^2 e^{4g^2 t} iint phi phi e^{2 sqrt2 g |x-y|}
///       erfc(2g sqrt t + |x-y|/sqrt(2t))
///   + sqrt2 gamma rho^2 (1 - e^{4g^2 t} erfc(2g sqrt t)) int phi^2.
/// The double integral is reduced to int K(d) h(d) dd.
VarianceValue limit_variance(const TestFunction& phi, double rho, double gamma, double t);

/// The (u, v) representation
///   (sqrt2 g rho^2 / 2) int [phi(u/2)^2 (1 - atom)
///                            - int density(v) phi((u+v)/2) phi((u-v)/2) dv] du
/// with the closed-form atom and density, by nested adaptive quadrature.
VarianceValue limit_variance_alt(const TestFunction& phi, double rho, double gamma, double t);

/// Limit of finite_variance implied by the scaled chain's own sticky kernel
/// (theta = sqrt2 gamma):
///   theta rho^2 (1 - atom) int phi^2 - rho^2 iint phi(x) phi(y) P_t(x - y).
VarianceValue limit_variance_chain(const TestFunction& phi, double rho, double gamma, double t);

struct SecondMoment {
  double from_variance = 0.0;      // rho^2 (int phi)^2 + variance
  double from_pair_kernel = 0.0;   // rho^2 int dv iint phi phi pbar_t(v; dx, dy)
};

/// Uncentred second moment by two routes. `variance` selects the variance
/// used in the first route; the second route integrates the two-point
/// kernel pbar of `kernel` over the starting difference v.
SecondMoment uncentred_second_moment(const TestFunction& phi, double rho, double t,
                                     const StickyKernel& kernel, double variance);

}  // namespace sipkit
