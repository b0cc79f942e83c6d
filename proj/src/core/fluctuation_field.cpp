#include "fluctuation_field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "error.hpp"
#include "quadrature.hpp"
#include "special.hpp"

namespace sipkit {

namespace {

constexpr double sqrt2 = std::numbers::sqrt2;
constexpr double inner_tol = 1e-13;
constexpr double outer_tol = 1e-11;

void require_compact(const TestFunction& phi) {
  require(phi.compact(), "variance: the test function must have compact support");
}

bool is_zero(const TestFunction& phi) { return phi.kind() == TestFunction::Kind::Zero; }

double width(const TestFunction& phi) { return phi.support_hi() - phi.support_lo(); }

// 2 int_0^D f(d) h(d) dd for an even kernel f.
QuadratureResult against_autocorrelation(const TestFunction& phi, const Integrand& f) {
  const auto r = integrate([&](double d) { return f(d) * autocorrelation(phi, d); }, 0.0,
                           width(phi), outer_tol, 1e-12);
  return {2.0 * r.value, 2.0 * r.error};
}

QuadratureResult l2_by_quadrature(const TestFunction& phi) {
  return integrate([&](double x) { return phi(x) * phi(x); }, phi.support_lo(), phi.support_hi(),
                   inner_tol, 1e-13);
}

}  // namespace

VarianceInputs VarianceInputs::poisson(double rho, double gamma, double t) {
  return {rho, rho * rho, gamma, t};
}

VarianceInputs VarianceInputs::stationary(double rho, double k, double gamma, double t) {
  require(k > 0.0, "stationary sigma: k must be positive");
  return {rho, rho * rho * (k + 1.0) / k, gamma, t};
}

void VarianceInputs::validate() const {
  require(rho > 0.0, "variance: rho must be positive");
  require(sigma >= 0.0, "variance: sigma must be >= 0");
  require(gamma > 0.0, "variance: gamma must be positive");
  require(t >= 0.0, "variance: t must be >= 0");
}

VarianceValue finite_variance(int N, const TestFunction& phi, const VarianceInputs& in,
                              const FiniteRangeKernel& kernel, const TransitionOptions& options) {
  in.validate();
  require(N >= 1, "finite_variance: N must be >= 1");
  require_compact(phi);
  if (is_zero(phi)) return {};

  const auto xlo = static_cast<int64_t>(std::ceil(phi.support_lo() * N));
  const auto xhi = static_cast<int64_t>(std::floor(phi.support_hi() * N));
  std::vector<double> f;
  for (int64_t x = xlo; x <= xhi; ++x) f.push_back(phi(static_cast<double>(x) / N));
  const auto n = static_cast<int64_t>(f.size());

  const ScaledDiffParams sp{N, in.gamma, kernel};
  TransitionOptions opts = options;
  // The row must cover every difference x - y inside the support.
  if (!opts.window) opts.min_window = std::max(opts.min_window, n + kernel.range());
  const TransitionRow row = scaled_transition_row(in.t, sp, opts);

  const double c = sqrt2 * in.gamma * N;  // 1 / k_N
  const double factor = in.sigma / (1.0 + c) - in.rho * in.rho;
  double off = 0.0, diag = 0.0, abs_weight = 0.0;
  for (int64_t d = -(n - 1); d <= n - 1; ++d) {
    double corr = 0.0;
    for (int64_t i = std::max<int64_t>(0, -d); i < n && i + d < n; ++i)
      corr += f[static_cast<std::size_t>(i)] * f[static_cast<std::size_t>(i + d)];
    if (d == 0) diag = corr;
    off += corr * row.at(d);
    double acorr = 0.0;
    for (int64_t i = std::max<int64_t>(0, -d); i < n && i + d < n; ++i)
      acorr += std::abs(f[static_cast<std::size_t>(i)] * f[static_cast<std::size_t>(i + d)]);
    abs_weight += acorr * (d == 0 ? 1.0 + c : 1.0);
  }
  const double inv = 1.0 / (static_cast<double>(N) * N);
  const double value =
      inv * (factor * (off + c * diag * row.at(0)) + diag * (c * in.rho * in.rho + in.rho));
  const double error = inv * std::abs(factor) * abs_weight * row.error_bound;
  return {value, error};
}

double autocorrelation(const TestFunction& phi, double d) {
  if (is_zero(phi)) return 0.0;
  require_compact(phi);
  const double ad = std::abs(d);
  const double lo = phi.support_lo(), hi = phi.support_hi() - ad;
  if (hi <= lo) return 0.0;
  return integrate([&](double x) { return phi(x) * phi(x + ad); }, lo, hi, inner_tol, 1e-13).value;
}

VarianceValue limit_variance(const TestFunction& phi, double rho, double gamma, double t) {
  require(t > 0.0 && rho > 0.0 && gamma > 0.0, "limit_variance: need t, rho, gamma > 0");
  require_compact(phi);
  if (is_zero(phi)) return {};
  const StickyKernel cf = StickyKernel::closed_form(gamma);
  // e^{4g^2 t} e^{2 sqrt2 g d} erfc(2g sqrt t + d / sqrt(2t)) = P_t(d)
  const auto I = against_autocorrelation(phi, [&](double d) { return cf.hit_zero_prob(d, t); });
  const double atom = cf.mass_at_zero(t);
  const auto l2 = l2_by_quadrature(phi);
  const double g2 = gamma * gamma;
  const double value = -sqrt2 * g2 * rho * rho * I.value + sqrt2 * gamma * rho * rho * (1.0 - atom) * l2.value;
  const double error = sqrt2 * g2 * rho * rho * I.error + sqrt2 * gamma * rho * rho * l2.error;
  return {value, error};
}

VarianceValue limit_variance_alt(const TestFunction& phi, double rho, double gamma, double t) {
  require(t > 0.0 && rho > 0.0 && gamma > 0.0, "limit_variance_alt: need t, rho, gamma > 0");
  require_compact(phi);
  if (is_zero(phi)) return {};
  const StickyKernel cf = StickyKernel::closed_form(gamma);
  const double atom = cf.mass_at_zero(t);
  const double lo = phi.support_lo(), hi = phi.support_hi();

  auto inner = [&](double u) {
    const double vlo = std::max(u - 2.0 * hi, 2.0 * lo - u);
    const double vhi = std::min(2.0 * hi - u, u - 2.0 * lo);
    if (vhi <= vlo) return 0.0;
    auto g = [&](double v) { return cf.density(v, t) * phi(0.5 * (u + v)) * phi(0.5 * (u - v)); };
    double s = 0.0;
    if (vlo < 0.0 && vhi > 0.0) {
      s = integrate(g, vlo, 0.0, inner_tol, 1e-13).value + integrate(g, 0.0, vhi, inner_tol, 1e-13).value;
    } else {
      s = integrate(g, vlo, vhi, inner_tol, 1e-13).value;
    }
    const double p = phi(0.5 * u);
    return p * p * (1.0 - atom) - s;
  };
  const auto r = integrate(inner, 2.0 * lo, 2.0 * hi, outer_tol, 1e-12);
  const double c = sqrt2 * gamma * rho * rho / 2.0;
  return {c * r.value, c * r.error};
}

VarianceValue limit_variance_chain(const TestFunction& phi, double rho, double gamma, double t) {
  require(t > 0.0 && rho > 0.0 && gamma > 0.0, "limit_variance_chain: need t, rho, gamma > 0");
  require_compact(phi);
  if (is_zero(phi)) return {};
  const StickyKernel sl = StickyKernel::scaling_limit(gamma);
  const auto I = against_autocorrelation(phi, [&](double d) { return sl.hit_zero_prob(d, t); });
  const auto l2 = l2_by_quadrature(phi);
  const double value = sl.theta() * rho * rho * (1.0 - sl.mass_at_zero(t)) * l2.value - rho * rho * I.value;
  return {value, rho * rho * (I.error + sl.theta() * l2.error)};
}

SecondMoment uncentred_second_moment(const TestFunction& phi, double rho, double t,
                                     const StickyKernel& kernel, double variance) {
  require(t > 0.0 && rho > 0.0, "uncentred_second_moment: need t, rho > 0");
  require_compact(phi);
  if (is_zero(phi)) return {};
  SecondMoment out;
  const double mean = integrate([&](double x) { return phi(x); }, phi.support_lo(), phi.support_hi(),
                                inner_tol, 1e-13).value;
  out.from_variance = rho * rho * mean * mean + variance;

  // int dv density_from(v, d): split at the kinks v = 0 and v = d.
  auto gamma_of = [&](double d) {
    const double ad = std::abs(d);
    auto f = [&](double v) { return kernel.density_from(v, ad, t); };
    auto g = [&](double v) { return kernel.density_from(-v, ad, t); };
    double s = integrate_to_infinity(f, ad, inner_tol, 1e-12).value +
               integrate_to_infinity(g, 0.0, inner_tol, 1e-12).value;
    if (ad > 0.0) s += integrate(f, 0.0, ad, inner_tol, 1e-12).value;
    return s;
  };
  const auto pair = against_autocorrelation(phi, gamma_of);
  const double atom_integral =
      2.0 * integrate_to_infinity([&](double v) { return kernel.hit_zero_prob(v, t); }, 0.0,
                                  inner_tol, 1e-12)
                .value;
  out.from_pair_kernel = rho * rho * (pair.value + atom_integral * l2_by_quadrature(phi).value);
  return out;
}

}  // namespace sipkit
