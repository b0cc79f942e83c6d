#include "sticky_bm.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "error.hpp"
#include "quadrature.hpp"
#include "special.hpp"

namespace sipkit {

namespace {

constexpr double sqrt2 = std::numbers::sqrt2;

double gaussian(double x, double var) {
  return std::exp(-x * x / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
}

// E'(x) and E''(x) for E = erfcx.
double erfcx_d1(double x) { return 2.0 * x * erfcx(x) - 2.0 * std::numbers::inv_sqrtpi; }
double erfcx_d2(double x) { return 2.0 * erfcx(x) + 2.0 * x * erfcx_d1(x); }

}  // namespace

StickyKernel StickyKernel::from_weight(double theta) {
  require(theta > 0.0 && std::isfinite(theta), "sticky kernel: theta must be positive");
  return StickyKernel(theta, 1.0);
}

StickyKernel StickyKernel::closed_form(double gamma) {
  require(gamma > 0.0 && std::isfinite(gamma), "sticky kernel: gamma must be positive");
  return StickyKernel(1.0 / (sqrt2 * gamma), 1.0);
}

StickyKernel StickyKernel::scaling_limit(double gamma) {
  require(gamma > 0.0 && std::isfinite(gamma), "sticky kernel: gamma must be positive");
  return StickyKernel(sqrt2 * gamma, 1.0);
}

StickyKernel StickyKernel::with_diffusion(double chi) const {
  require(chi > 0.0 && std::isfinite(chi), "sticky kernel: chi must be positive");
  return StickyKernel(theta_, time_scale_ * 2.0 * chi);
}

double StickyKernel::a() const noexcept { return sqrt2 / theta_; }

double StickyKernel::mass_at_zero(double t) const {
  require(t >= 0.0, "mass_at_zero: t must be >= 0");
  const double tt = time_scale_ * t;
  if (tt == 0.0) return 1.0;
  return erfcx(a() * std::sqrt(tt));
}

double StickyKernel::hit_zero_prob(double v, double t) const {
  require(t >= 0.0, "hit_zero_prob: t must be >= 0");
  const double tt = time_scale_ * t;
  if (tt == 0.0) return v == 0.0 ? 1.0 : 0.0;
  const double av = std::abs(v);
  // exp(4g^2 t + 2 sqrt2 g |v|) erfc(b + u) = exp(-v^2/2t) E(b + u)
  return std::exp(-av * av / (2.0 * tt)) * erfcx(a() * std::sqrt(tt) + av / std::sqrt(2.0 * tt));
}

double StickyKernel::density(double v, double t) const {
  require(t > 0.0, "density: t must be positive");
  return hit_zero_prob(v, t) / theta_;
}

double StickyKernel::density_from(double v0, double z, double t) const {
  require(t > 0.0, "density_from: t must be positive");
  const double tt = time_scale_ * t;
  double killed = 0.0;
  if (v0 * z > 0.0) killed = gaussian(z - v0, tt) - gaussian(z + v0, tt);
  return killed + hit_zero_prob(std::abs(v0) + std::abs(z), t) / theta_;
}

double StickyKernel::total_mass(double t) const {
  const auto r = integrate_to_infinity([&](double v) { return density(v, t); }, 0.0, 1e-13);
  return mass_at_zero(t) + 2.0 * r.value;
}

double StickyKernel::second_moment(double t) const {
  const auto r = integrate_to_infinity([&](double v) { return v * v * density(v, t); }, 0.0, 1e-12);
  return 2.0 * r.value;
}

double StickyKernel::density_overlap(double s, double t) const {
  const auto r = integrate_to_infinity([&](double z) { return density(z, s) * density(z, t); },
                                       0.0, 1e-13);
  return 2.0 * r.value;
}

double StickyKernel::chapman_kolmogorov_residual(double s, double t, double weight) const {
  return mass_at_zero(s + t) - mass_at_zero(s) * mass_at_zero(t) - weight * density_overlap(s, t);
}

double StickyKernel::hit_derivative_right(double t) const {
  require(t > 0.0, "hit_derivative_right: t must be positive");
  const double tt = time_scale_ * t;
  return erfcx_d1(a() * std::sqrt(tt)) / std::sqrt(2.0 * tt);
}

double StickyKernel::hit_second_derivative_right(double t) const {
  require(t > 0.0, "hit_second_derivative_right: t must be positive");
  const double tt = time_scale_ * t;
  const double b = a() * std::sqrt(tt);
  return -erfcx(b) / tt + erfcx_d2(b) / (2.0 * tt);
}

double mass_at_zero(double t, double gamma) { return StickyKernel::closed_form(gamma).mass_at_zero(t); }

double density(double v, double t, double gamma) {
  return StickyKernel::closed_form(gamma).density(v, t);
}

double hit_zero_prob(double v, double t, double gamma) {
  return StickyKernel::closed_form(gamma).hit_zero_prob(v, t);
}

double hit_zero_prob_sqrt2gamma(double v, double t, double gamma) {
  return sqrt2 * gamma * density(v, t, gamma);
}

StickySampler::StickySampler(StickyKernel kernel, double t) : kernel_(kernel), t_(t) {
  require(t > 0.0, "sample_marginal: t must be positive");
  atom_ = kernel_.mass_at_zero(t);
  b_ = std::numbers::sqrt2 / kernel_.theta() * std::sqrt(kernel_.time_scale() * t);
  eb_ = erfcx(b_);
}

double StickySampler::acceptance_rate() const noexcept {
  return proposals_ == 0 ? 1.0 : static_cast<double>(accepted_) / static_cast<double>(proposals_);
}

double StickySampler::operator()(Rng& rng) {
  if (uniform_open(rng) < atom_) return 0.0;
  const double sd = std::sqrt(kernel_.time_scale() * t_);
  std::normal_distribution<double> normal;
  while (true) {
    const double v = std::abs(normal(rng)) * sd;
    ++proposals_;
    if (uniform_open(rng) * eb_ < erfcx(b_ + v / (std::numbers::sqrt2 * sd))) {
      ++accepted_;
      return uniform_open(rng) < 0.5 ? -v : v;
    }
    if (proposals_ >= 1000 && acceptance_rate() < 1e-3)
      fail(ErrorCode::RejectionStall,
           "sample_marginal: acceptance rate " + std::to_string(acceptance_rate()));
  }
}

double sample_marginal(const StickyKernel& kernel, double t, Rng& rng) {
  StickySampler sampler(kernel, t);
  return sampler(rng);
}

std::vector<double> sample_marginal(const StickyKernel& kernel, double t, std::size_t count,
                                    uint64_t seed) {
  Rng rng = make_rng(seed);
  StickySampler sampler(kernel, t);
  std::vector<double> out(count);
  for (auto& x : out) x = sampler(rng);
  return out;
}

TimeChangeGrid time_change_path(double t_end, double theta, double dt, Rng& rng,
                                double eps_factor) {
  require(dt > 0.0 && t_end >= 0.0, "time_change_path: need dt > 0 and t_end >= 0");
  require(theta >= 0.0, "time_change_path: theta must be >= 0");
  require(eps_factor > 0.0, "time_change_path: eps_factor must be positive");
  TimeChangeGrid g;
  g.dt = dt;
  g.epsilon = eps_factor * std::sqrt(dt);
  // T_s >= s, so tau(t_end) <= t_end and the path never needs to run longer.
  const auto n = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
  g.B.assign(n + 1, 0.0);
  g.L.assign(n + 1, 0.0);
  g.T.assign(n + 1, 0.0);
  std::normal_distribution<double> normal;
  const double sd = std::sqrt(dt);
  const double bump = dt / (2.0 * g.epsilon);
  for (std::size_t j = 0; j < n; ++j) {
    g.B[j + 1] = g.B[j] + sd * normal(rng);
    g.L[j + 1] = g.L[j] + (std::abs(g.B[j]) <= g.epsilon ? bump : 0.0);
    g.T[j + 1] = static_cast<double>(j + 1) * dt + theta * g.L[j + 1];
  }
  g.X.assign(n + 1, 0.0);
  std::size_t j = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    const double target = static_cast<double>(i) * dt;
    while (j < n && g.T[j] < target) ++j;
    g.X[i] = g.B[j];
  }
  return g;
}

TimeChangeGrid time_change_path(double t_end, double theta, double dt, uint64_t seed,
                                double eps_factor) {
  Rng rng = make_rng(seed);
  return time_change_path(t_end, theta, dt, rng, eps_factor);
}

}  // namespace sipkit
