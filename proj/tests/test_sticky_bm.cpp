#include <cmath>
#include <numbers>

#include "doctest.h"
#include "error.hpp"
#include "oracle_values.hpp"
#include "sip_lattice.hpp"
#include "special.hpp"
#include "sticky_bm.hpp"

using namespace sipkit;

namespace {

constexpr double sqrt2 = std::numbers::sqrt2;

}  // namespace

TEST_CASE("atom of the displayed kernel") {
  for (double g : {0.5, 1.0, 2.0}) {
    CHECK(mass_at_zero(0.0, g) == 1.0);
    CHECK(mass_at_zero(0.3, g) == doctest::Approx(std::exp(4 * g * g * 0.3) * std::erfc(2 * g * std::sqrt(0.3))));
    double prev = 1.0;
    for (double t = 0.01; t < 50.0; t *= 1.7) {
      const double m = mass_at_zero(t, g);
      CHECK(m < prev);
      prev = m;
    }
    const double t = 1e4 / (g * g);
    CHECK(mass_at_zero(t, g) / (1.0 / (2 * g * std::sqrt(M_PI * t))) == doctest::Approx(1.0).epsilon(0.02));
  }
}

TEST_CASE("kernel values against Laplace inversion and hitting-time convolution") {
  CHECK(StickyKernel::from_weight(sqrt2).mass_at_zero(0.5) ==
        doctest::Approx(oracle::sticky_atom_th1p4142_t0p5).epsilon(1e-12));
  CHECK(StickyKernel::from_weight(1 / sqrt2).mass_at_zero(1.0) ==
        doctest::Approx(oracle::sticky_atom_th0p7071_t1p0).epsilon(1e-12));
  CHECK(StickyKernel::from_weight(2.0).mass_at_zero(0.1) ==
        doctest::Approx(oracle::sticky_atom_th2p0000_t0p1).epsilon(1e-12));
  CHECK(StickyKernel::from_weight(sqrt2).hit_zero_prob(0.5, 0.5) ==
        doctest::Approx(oracle::sticky_hit_thsqrt2_v0p5_t0p5).epsilon(1e-10));
  CHECK(StickyKernel::from_weight(1.0).hit_zero_prob(-1.0, 2.0) ==
        doctest::Approx(oracle::sticky_hit_th1_v1_t2).epsilon(1e-10));
  CHECK(StickyKernel::from_weight(1.0).second_moment(1.0) == doctest::Approx(oracle::sticky_m2_th1_t1).epsilon(1e-9));

  // The two named conventions.
  CHECK(StickyKernel::closed_form(1.0).theta() == doctest::Approx(1 / sqrt2));
  CHECK(StickyKernel::scaling_limit(1.0).theta() == doctest::Approx(sqrt2));
  CHECK(StickyKernel::scaling_limit(1.0).mass_at_zero(0.5) == doctest::Approx(std::exp(0.5) * std::erfc(std::sqrt(0.5))));
}

TEST_CASE("density") {
  for (double g : {0.5, 1.0, 2.0})
    for (double t : {0.1, 1.0, 10.0}) {
      const auto k = StickyKernel::closed_form(g);
      CHECK(std::abs(k.total_mass(t) - 1.0) <= 1e-8);
      for (double v : {0.1, 0.7, 3.0}) CHECK(density(v, t, g) == density(-v, t, g));
      const double v = 0.4, b = 2 * g * std::sqrt(t), u = v / std::sqrt(2 * t);
      CHECK(density(v, t, g) == doctest::Approx(sqrt2 * g * std::exp(2 * sqrt2 * g * v + 4 * g * g * t) *
                                                  std::erfc(b + u))
                                    .epsilon(1e-12));
    }
  // Far field: density e^{v^2/2t} (b + u) sqrt(pi) theta -> 1, the Gaussian
  // tail of a variance-t diffusion times the erfcx decay.
  const double t = 0.7, g = 1.0;
  const auto k = StickyKernel::closed_form(g);
  const double b = 2 * g * std::sqrt(t);
  double prev = 1.0;
  for (double v : {5.0, 10.0, 20.0, 30.0}) {
    const double u = v / std::sqrt(2 * t);
    const double ratio = k.density(v, t) * std::exp(v * v / (2 * t)) * (b + u) * std::sqrt(M_PI) * k.theta();
    CHECK(std::abs(ratio - 1.0) < prev);
    prev = std::abs(ratio - 1.0);
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("semigroup identity at the atom") {
  const auto k = StickyKernel::closed_form(1.0);
  for (auto [s, t] : {std::pair{0.5, 0.5}, std::pair{0.2, 1.0}})
    CHECK(std::abs(k.chapman_kolmogorov_residual(s, t, k.theta())) <= 1e-10);
  const auto sl = StickyKernel::scaling_limit(0.6);
  CHECK(std::abs(sl.chapman_kolmogorov_residual(0.3, 0.8, sl.theta())) <= 1e-10);
}

TEST_CASE("semigroup identity with the weight sqrt2 gamma" * doctest::should_fail()) {
  // Weight sqrt2 gamma against the displayed kernel, whose own weight is
  // 1/(sqrt2 gamma); the two coincide only at gamma = 1/sqrt2.
  const auto k = StickyKernel::closed_form(1.0);
  CHECK(std::abs(k.chapman_kolmogorov_residual(0.5, 0.5, sqrt2)) <= 1e-6);
}

TEST_CASE("hitting the origin") {
  for (double g : {0.5, 2.0}) {
    CHECK(hit_zero_prob(0.0, 0.8, g) == doctest::Approx(mass_at_zero(0.8, g)).epsilon(1e-15));
    for (double v : {0.0, 0.05, 0.5, 2.0})
      for (double t : {0.01, 1.0, 10.0}) {
        CHECK(hit_zero_prob(v, t, g) <= 1.0);
        CHECK(hit_zero_prob(v, t, g) >= 0.0);
      }
  }
  // sqrt2 gamma * density exceeds one near the origin for gamma = 2.
  CHECK(hit_zero_prob_sqrt2gamma(0.0, 1.0, 2.0) > 1.0);

  // Sticky boundary condition theta u''(0+) = 2 u'(0+) for u = P_.(X_t = 0).
  for (double theta : {0.3, 1.0, 2.5})
    for (double t : {0.2, 1.0}) {
      const auto k = StickyKernel::from_weight(theta);
      const double d1 = k.hit_derivative_right(t), d2 = k.hit_second_derivative_right(t);
      CHECK(theta * d2 == doctest::Approx(2.0 * d1).epsilon(1e-12));
      const double h = 1e-4;
      const double fd1 = (-3 * k.hit_zero_prob(0, t) + 4 * k.hit_zero_prob(h, t) - k.hit_zero_prob(2 * h, t)) / (2 * h);
      CHECK(fd1 == doctest::Approx(d1).epsilon(1e-6));
    }
}

TEST_CASE("diffusion coefficient") {
  // Generator chi f'': the same-weight kernel at time 2 chi t.
  const auto k = StickyKernel::scaling_limit(1.0);
  const auto kc = k.with_diffusion(1.25);
  CHECK(kc.theta() == k.theta());
  CHECK(kc.mass_at_zero(0.5) == doctest::Approx(k.mass_at_zero(1.25)).epsilon(1e-15));
  CHECK(kc.density(0.3, 0.5) == doctest::Approx(k.density(0.3, 1.25)).epsilon(1e-15));
  CHECK(k.with_diffusion(0.5).mass_at_zero(0.7) == k.mass_at_zero(0.7));
}

TEST_CASE("sampling the marginal") {
  const auto k = StickyKernel::scaling_limit(1.0);
  const double t = 0.5;
  const auto xs = sample_marginal(k, t, 1000000, 17);
  std::vector<double> zero(xs.size()), sq(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    zero[i] = xs[i] == 0.0 ? 1.0 : 0.0;
    sq[i] = xs[i] * xs[i];
  }
  const auto z = mean_and_se(zero);
  const auto m2 = mean_and_se(sq);
  CHECK(std::abs(z.mean - k.mass_at_zero(t)) <= 4 * z.se);
  CHECK(std::abs(m2.mean - k.second_moment(t)) <= 4 * m2.se);

  const auto tiny = sample_marginal(k, 1e-12, 1000, 3);
  int zeros = 0;
  for (double x : tiny) zeros += x == 0.0;
  CHECK(zeros == 1000);
  CHECK(sample_marginal(k, t, 10, 5) == sample_marginal(k, t, 10, 5));
}

TEST_CASE("time-changed Brownian path") {
  // theta = 0: no time change.
  const auto g0 = time_change_path(1.0, 0.0, 1e-3, 8);
  CHECK(g0.X == g0.B);

  // Time spent at the origin up to t is theta L_{tau(t)}; its mean fraction
  // is the time average of the atom started from 0.
  const double theta = sqrt2, t_end = 1.0;
  const double atom_mean = [&] {
    const auto k = StickyKernel::from_weight(theta);
    double s = 0.0;
    const int n = 2000;
    for (int i = 0; i < n; ++i) s += k.mass_at_zero((i + 0.5) * t_end / n);
    return s / n;
  }();
  for (double dt : {1e-3, 2.5e-4}) {
    std::vector<double> frac(2000);
    for (std::size_t j = 0; j < frac.size(); ++j) {
      const auto g = time_change_path(t_end, theta, dt, replica_seed(99, j));
      std::size_t m = 0;
      while (m + 1 < g.T.size() && g.T[m + 1] <= t_end) ++m;
      frac[j] = theta * g.L[m] / t_end;
    }
    const auto e = mean_and_se(frac);
    MESSAGE("dt=" << dt << " time fraction at 0: " << e.mean << " +- " << e.se << " (mean atom " << atom_mean << ")");
    CHECK(std::abs(e.mean - atom_mean) <= 4.0 * e.se + 0.02);
  }
}
