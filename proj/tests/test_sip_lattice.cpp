#include <cmath>
#include <numeric>

#include "doctest.h"
#include "error.hpp"
#include "oracle_values.hpp"
#include "sip_lattice.hpp"

using namespace sipkit;

namespace {

bool within_se(double estimate, double target, double se, double n_se = 4.0) {
  return std::abs(estimate - target) <= n_se * se;
}

}  // namespace

TEST_CASE("Poisson product sampling") {
  const int L = 1000000;
  const double rho = 1.3;
  const auto eta = sample_poisson_product(rho, L, 11);
  std::vector<double> n(L), fact(L);
  for (int x = 0; x < L; ++x) {
    n[x] = static_cast<double>(eta[x]);
    fact[x] = n[x] * (n[x] - 1.0);
  }
  const auto m = mean_and_se(n);
  const auto f = mean_and_se(fact);
  CHECK(within_se(m.mean, rho, m.se));
  CHECK(within_se(f.mean, rho * rho, f.se));
  CHECK(sample_poisson_product(1e-9, 1000, 3).total() == 0);
}

TEST_CASE("stationary marginals") {
  CHECK(stationary_marginal_pmf(3, 2.0, 0.5) == doctest::Approx(oracle::nb_n3_rho2_k0p5).epsilon(1e-12));
  CHECK(stationary_marginal_pmf(0, 1.0, 3.0) == doctest::Approx(oracle::nb_n0_rho1_k3).epsilon(1e-14));
  for (double k : {0.3, 1.0, 7.0})
    CHECK(stationary_marginal_pmf(0, 1.5, k) == doctest::Approx(std::pow(k / (k + 1.5), k)).epsilon(1e-13));

  // Total variation to Poisson(rho) on {0..60} shrinks as k grows.
  const double rho = 1.5;
  double prev = 1e9;
  for (double k : {0.5, 2.0, 8.0, 32.0, 128.0}) {
    double tv = 0.0;
    for (int n = 0; n <= 60; ++n) {
      const double pois = std::exp(-rho + n * std::log(rho) - std::lgamma(n + 1.0));
      tv += 0.5 * std::abs(stationary_marginal_pmf(n, rho, k) - pois);
    }
    CHECK(tv < prev);
    prev = tv;
  }

  const auto eta = sample_stationary_product(2.0, 0.5, 400000, 5);
  std::vector<double> n(eta.occupancy().begin(), eta.occupancy().end());
  const auto m = mean_and_se(n);
  CHECK(within_se(m.mean, 2.0, m.se));
}

TEST_CASE("SIP dynamics") {
  const SipParams p{0.7, FiniteRangeKernel::range_two(), 32};
  const auto eta0 = sample_poisson_product(2.0, 32, 9);
  CHECK(simulate(eta0, p, 0.0, 1) == eta0);
  for (double T : {0.1, 1.0, 5.0}) CHECK(simulate(eta0, p, T, 2).total() == eta0.total());

  // A lone particle jumps at total rate k sum_{r in A} p(r).
  Configuration one = Configuration::empty(32);
  one.add(5);
  const double T = 20.0;
  std::vector<double> events(4000);
  for (std::size_t j = 0; j < events.size(); ++j) {
    Rng rng = make_rng(replica_seed(77, j));
    SipSimulator sim(one, p);
    sim.run_until(T, rng);
    events[j] = static_cast<double>(sim.events()) / T;
  }
  const auto e = mean_and_se(events);
  CHECK(within_se(e.mean, p.k * p.kernel.total_weight(), e.se));

  CHECK_THROWS_AS((SipParams{0.5, FiniteRangeKernel::range_two(), 4}.validate()), Error);
  CHECK_THROWS_AS((SipParams{0.0, FiniteRangeKernel::nearest_neighbor(), 8}.validate()), Error);
}

TEST_CASE("duality functions") {
  for (int64_t n : {0, 1, 7}) CHECK(duality_single(0, n, 0.4) == 1.0);
  CHECK(duality_single(2, 3, 1.0) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(duality_single(4, 3, 1.0) == 0.0);
  CHECK(duality_single(2, 5, 0.5) == doctest::Approx(oracle::dual_m2_n5_k05).epsilon(1e-14));
  CHECK(duality_single(3, 3, 2.0) == doctest::Approx(oracle::dual_m3_n3_k2).epsilon(1e-14));
  CHECK(duality_single(100, 150, 0.3) == doctest::Approx(oracle::dual_m100_n150_k03).epsilon(1e-11));

  const Configuration eta(std::vector<int64_t>{3, 0, 2, 5});
  CHECK(duality_D({}, eta, 0.5) == 1.0);
  CHECK(duality_D({{2}}, eta, 0.5) == doctest::Approx(2.0 / 0.5));
  CHECK(duality_D({{1}}, eta, 0.5) == 0.0);
  CHECK(duality_D({{0, 0, 0, 0}}, eta, 0.5) == 0.0);
  CHECK(duality_D({{0, 6}}, eta, 1.0) == doctest::Approx(3.0 * 2.0));
}

TEST_CASE("duality Monte Carlo") {
  const SipParams p{1.0, FiniteRangeKernel::nearest_neighbor(), 12};
  const Configuration eta(std::vector<int64_t>{1, 2, 0, 1, 3, 0, 1, 0, 2, 1, 0, 1});
  const DualConfiguration xi{{3, 4}};

  const auto at0 = duality_check(xi, eta, p, 0.0, 50, 1);
  CHECK(at0.configuration_side.mean == duality_D(xi, eta, p.k));
  CHECK(at0.dual_side.mean == duality_D(xi, eta, p.k));
  CHECK(at0.configuration_side.se == 0.0);

  const auto empty = duality_check({}, eta, p, 0.7, 50, 1);
  CHECK(empty.configuration_side.mean == 1.0);
  CHECK(empty.dual_side.mean == 1.0);

  const auto r = duality_check(xi, eta, p, 0.4, 40000, 123, 4);
  const double se = std::hypot(r.configuration_side.se, r.dual_side.se);
  CHECK(within_se(r.configuration_side.mean, r.dual_side.mean, se));

  // Results depend on the seed only, not on the worker count.
  const auto a = duality_check(xi, eta, p, 0.4, 500, 9, 1);
  const auto b = duality_check(xi, eta, p, 0.4, 500, 9, 3);
  CHECK(a.configuration_side.mean == b.configuration_side.mean);
  CHECK(a.dual_side.mean == b.dual_side.mean);
}
