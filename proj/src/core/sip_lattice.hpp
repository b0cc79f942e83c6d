#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kernel.hpp"
#include "rng.hpp"

namespace sipkit {

/// SIP occupancies on the periodic lattice {0, ..., L-1}.
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(std::vector<int64_t> occupancy);
  static Configuration empty(int L);

  int size() const noexcept { return static_cast<int>(eta_.size()); }
  int64_t total() const noexcept { return total_; }
  int64_t operator[](int x) const noexcept { return eta_[static_cast<std::size_t>(x)]; }
  /// Occupancy at x taken modulo L.
  int64_t at_periodic(int64_t x) const noexcept;
  std::span<const int64_t> occupancy() const noexcept { return eta_; }

  /// eta^{ij}: removes a particle from `from` and puts it at `to`.
  void move(int from, int to);
  void add(int x, int64_t n = 1);

  bool operator==(const Configuration&) const = default;

 private:
  std::vector<int64_t> eta_;
  int64_t total_ = 0;
};

struct SipParams {
  double k;
  FiniteRangeKernel kernel;
  int L;

  /// Throws unless k > 0 and L > 2R.
  void validate() const;
};

/// Finitely many dual particles, stored as positions (a multiset).
struct DualConfiguration {
  std::vector<int64_t> positions;

  /// Occupation numbers as a configuration on a torus of size L.
  Configuration on_torus(int L) const;
};

Configuration sample_poisson_product(double rho, int L, Rng& rng);
Configuration sample_poisson_product(double rho, int L, uint64_t seed);

/// i.i.d. negative-binomial marginals mu_rho (shape k, mean rho), drawn as a
/// gamma-Poisson mixture.
Configuration sample_stationary_product(double rho, double k, int L, Rng& rng);
Configuration sample_stationary_product(double rho, double k, int L, uint64_t seed);

/// mu_rho(eta_x = n) = k^k rho^n / (k+rho)^{k+n} * Gamma(k+n) / (n! Gamma(k)).
double stationary_marginal_pmf(int64_t n, double rho, double k);

/// Exact event-driven simulation of the SIP with ordered-pair rates
/// p(j - i) eta_i (k + eta_j) on the torus. Per-site outflow rates live in a
/// Fenwick tree, so each event costs O(R log L).
class SipSimulator {
 public:
  SipSimulator(Configuration initial, SipParams params);

  const Configuration& state() const noexcept { return eta_; }
  double time() const noexcept { return time_; }
  uint64_t events() const noexcept { return events_; }
  double total_rate() const noexcept;

  /// Advances to absolute time T (>= current time).
  void run_until(double T, Rng& rng);

 private:
  double site_rate(int x) const noexcept;
  void refresh(int x);
  void rebuild();
  void fenwick_add(int x, double delta);
  int fenwick_find(double target) const;
  int wrap(int64_t x) const noexcept;

  Configuration eta_;
  SipParams params_;
  std::vector<double> rates_;
  std::vector<double> tree_;
  int top_bit_ = 1;
  double time_ = 0.0;
  uint64_t events_ = 0;
};

Configuration simulate(const Configuration& eta0, const SipParams& params, double T, Rng& rng);
Configuration simulate(const Configuration& eta0, const SipParams& params, double T, uint64_t seed);

/// d(m, n) = n! Gamma(k) / ((n-m)! Gamma(k+m)) for m <= n, else 0.
double duality_single(int64_t m, int64_t n, double k);

/// D(xi, eta) = prod_x d(xi_x, eta_x), positions of xi taken modulo L.
double duality_D(const DualConfiguration& xi, const Configuration& eta, double k);

struct Estimate {
  double mean = 0.0;
  double se = 0.0;
};

struct DualityCheck {
  Estimate configuration_side;  // E_eta[D(xi, eta_t)]
  Estimate dual_side;           // E_xi[D(xi_t, eta)]
};

/// Monte Carlo estimates of both sides of the self-duality relation; xi has
/// at most three particles and is evolved with the same generator.
DualityCheck duality_check(const DualConfiguration& xi, const Configuration& eta,
                           const SipParams& params, double t, int replicas, uint64_t seed,
                           unsigned threads = 1);

Estimate mean_and_se(std::span<const double> samples);

}  // namespace sipkit
