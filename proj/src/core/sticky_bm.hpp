#pragma once

#include <cstdint>
#include <vector>

#include "rng.hpp"

namespace sipkit {

/// Two-sided sticky Brownian motion: generator (1/2) f'' off the origin,
/// reversible measure dx + theta delta_0, started from 0 unless noted.
/// With a = sqrt2 / theta and E(x) = exp(x^2) erfc(x):
///   atom        E(a sqrt t)
///   P_t(v)      = P_v(X_t = 0) = exp(-v^2/2t) E(a sqrt t + |v| / sqrt(2t))
///   density(v)  = P_t(v) / theta
class StickyKernel {
 public:
  static StickyKernel from_weight(double theta);
  /// The displayed closed form: atom exp(4 gamma^2 t) erfc(2 gamma sqrt t),
  /// density sqrt2 gamma exp(2 sqrt2 gamma |v| + 4 gamma^2 t) erfc(...).
  /// This is the kernel with theta = 1 / (sqrt2 gamma).
  static StickyKernel closed_form(double gamma);
  /// Limit of the condensively scaled difference chain: theta = sqrt2 gamma.
  static StickyKernel scaling_limit(double gamma);

  /// Generator chi f'' instead of (1/2) f'': time runs 2 chi times faster,
  /// theta is unchanged.
  StickyKernel with_diffusion(double chi) const;

  double theta() const noexcept { return theta_; }
  double time_scale() const noexcept { return time_scale_; }

  double mass_at_zero(double t) const;
  double density(double v, double t) const;
  /// P_v(X_t = 0); equals mass_at_zero at v = 0.
  double hit_zero_prob(double v, double t) const;
  /// Density at z of X_t started from v0 (continuous part; the atom from v0
  /// is hit_zero_prob(v0, t)).
  double density_from(double v0, double z, double t) const;

  /// atom + 2 int_0^inf density, by quadrature.
  double total_mass(double t) const;
  /// int v^2 p_t(0, dv), by quadrature.
  double second_moment(double t) const;
  /// int density(z, s) density(z, t) dz, by quadrature.
  double density_overlap(double s, double t) const;
  /// mass(s+t) - mass(s) mass(t) - weight * density_overlap(s, t).
  double chapman_kolmogorov_residual(double s, double t, double weight) const;

  /// One-sided derivatives of u = hit_zero_prob(., t) at 0+ in closed form.
  double hit_derivative_right(double t) const;
  double hit_second_derivative_right(double t) const;

 private:
  StickyKernel(double theta, double time_scale) : theta_(theta), time_scale_(time_scale) {}
  double a() const noexcept;

  double theta_;
  double time_scale_;
};

// Closed-form convention, parametrised by gamma.
double mass_at_zero(double t, double gamma);
double density(double v, double t, double gamma);
/// Kernel-consistent: theta * density with theta = 1 / (sqrt2 gamma).
double hit_zero_prob(double v, double t, double gamma);
/// sqrt2 gamma * density(v, t, gamma), the target named in the convergence
/// statement for the scaled chain.
double hit_zero_prob_sqrt2gamma(double v, double t, double gamma);

/// Draws X_t from 0: the atom with its probability, otherwise |v| from a
/// half-normal envelope (sd sqrt t) accepted with E(b + u) / E(b) <= 1, and
/// a random sign.
class StickySampler {
 public:
  StickySampler(StickyKernel kernel, double t);

  double operator()(Rng& rng);
  double acceptance_rate() const noexcept;

 private:
  StickyKernel kernel_;
  double t_;
  double atom_;
  double b_;
  double eb_;
  uint64_t proposals_ = 0;
  uint64_t accepted_ = 0;
};

double sample_marginal(const StickyKernel& kernel, double t, Rng& rng);
std::vector<double> sample_marginal(const StickyKernel& kernel, double t, std::size_t count,
                                    uint64_t seed);

/// Euler-grid Brownian path with its local time at 0, the additive
/// functional T_s = s + theta L_s and the time-changed path B_{tau(t)}.
struct TimeChangeGrid {
  double dt = 0.0;
  double epsilon = 0.0;
  std::vector<double> B;  // B at s = j dt
  std::vector<double> L;  // band estimate (1/2eps) int 1{|B| <= eps} ds
  std::vector<double> T;  // s + theta L_s
  std::vector<double> X;  // X(i dt) = B_{tau(i dt)}, i dt <= t_end
};

/// epsilon = eps_factor * sqrt(dt).
TimeChangeGrid time_change_path(double t_end, double theta, double dt, Rng& rng,
                                double eps_factor = 1.0);
TimeChangeGrid time_change_path(double t_end, double theta, double dt, uint64_t seed,
                                double eps_factor = 1.0);

}  // namespace sipkit
