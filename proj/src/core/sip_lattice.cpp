#include "sip_lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "error.hpp"
#include "parallel.hpp"

namespace sipkit {

Configuration::Configuration(std::vector<int64_t> occupancy) : eta_(std::move(occupancy)) {
  for (int64_t n : eta_) {
    require(n >= 0, "Configuration: occupancies must be nonnegative");
    total_ += n;
  }
}

Configuration Configuration::empty(int L) {
  require(L >= 1, "Configuration: L must be >= 1");
  return Configuration(std::vector<int64_t>(static_cast<std::size_t>(L), 0));
}

int64_t Configuration::at_periodic(int64_t x) const noexcept {
  const int64_t L = size();
  return eta_[static_cast<std::size_t>(((x % L) + L) % L)];
}

void Configuration::move(int from, int to) {
  require(eta_[static_cast<std::size_t>(from)] > 0, "Configuration::move: empty source site");
  --eta_[static_cast<std::size_t>(from)];
  ++eta_[static_cast<std::size_t>(to)];
}

void Configuration::add(int x, int64_t n) {
  require(eta_[static_cast<std::size_t>(x)] + n >= 0, "Configuration::add: negative occupancy");
  eta_[static_cast<std::size_t>(x)] += n;
  total_ += n;
}

void SipParams::validate() const {
  require(k > 0.0 && std::isfinite(k), "SipParams: k must be positive");
  require(L > 2 * kernel.range(), "SipParams: lattice size must exceed 2R");
}

Configuration DualConfiguration::on_torus(int L) const {
  Configuration c = Configuration::empty(L);
  for (int64_t x : positions) c.add(static_cast<int>(((x % L) + L) % L));
  return c;
}

Configuration sample_poisson_product(double rho, int L, Rng& rng) {
  require(rho > 0.0, "sample_poisson_product: rho must be positive");
  std::poisson_distribution<int64_t> pois(rho);
  std::vector<int64_t> eta(static_cast<std::size_t>(L));
  for (auto& n : eta) n = pois(rng);
  return Configuration(std::move(eta));
}

Configuration sample_poisson_product(double rho, int L, uint64_t seed) {
  Rng rng = make_rng(seed);
  return sample_poisson_product(rho, L, rng);
}

Configuration sample_stationary_product(double rho, double k, int L, Rng& rng) {
  require(rho > 0.0 && k > 0.0, "sample_stationary_product: rho and k must be positive");
  std::gamma_distribution<double> gamma(k, rho / k);
  std::vector<int64_t> eta(static_cast<std::size_t>(L));
  for (auto& n : eta) {
    const double lambda = gamma(rng);
    n = lambda > 0.0 ? std::poisson_distribution<int64_t>(lambda)(rng) : 0;
  }
  return Configuration(std::move(eta));
}

Configuration sample_stationary_product(double rho, double k, int L, uint64_t seed) {
  Rng rng = make_rng(seed);
  return sample_stationary_product(rho, k, L, rng);
}

double stationary_marginal_pmf(int64_t n, double rho, double k) {
  if (n < 0) return 0.0;
  const double nn = static_cast<double>(n);
  const double log_p = k * std::log(k / (k + rho)) + nn * std::log(rho / (k + rho)) +
                       std::lgamma(k + nn) - std::lgamma(nn + 1.0) - std::lgamma(k);
  return std::exp(log_p);
}

// ---------------------------------------------------------------------------

SipSimulator::SipSimulator(Configuration initial, SipParams params)
    : eta_(std::move(initial)), params_(std::move(params)) {
  params_.validate();
  require(eta_.size() == params_.L, "SipSimulator: configuration size differs from L");
  while (top_bit_ * 2 <= params_.L) top_bit_ *= 2;
  rebuild();
}

int SipSimulator::wrap(int64_t x) const noexcept {
  const int64_t L = params_.L;
  return static_cast<int>(((x % L) + L) % L);
}

double SipSimulator::site_rate(int x) const noexcept {
  const int64_t n = eta_[x];
  if (n == 0) return 0.0;
  const int R = params_.kernel.range();
  double s = 0.0;
  for (int r = 1; r <= R; ++r) {
    const double p = params_.kernel(r);
    if (p == 0.0) continue;
    s += p * (2.0 * params_.k + static_cast<double>(eta_[wrap(x + r)] + eta_[wrap(x - r)]));
  }
  return static_cast<double>(n) * s;
}

void SipSimulator::fenwick_add(int x, double delta) {
  for (int i = x + 1; i <= params_.L; i += i & -i) tree_[static_cast<std::size_t>(i)] += delta;
}

int SipSimulator::fenwick_find(double target) const {
  int pos = 0;
  for (int step = top_bit_; step > 0; step >>= 1) {
    const int next = pos + step;
    if (next <= params_.L && tree_[static_cast<std::size_t>(next)] < target) {
      pos = next;
      target -= tree_[static_cast<std::size_t>(next)];
    }
  }
  return std::min(pos, params_.L - 1);
}

void SipSimulator::rebuild() {
  rates_.assign(static_cast<std::size_t>(params_.L), 0.0);
  tree_.assign(static_cast<std::size_t>(params_.L) + 1, 0.0);
  for (int x = 0; x < params_.L; ++x) {
    rates_[static_cast<std::size_t>(x)] = site_rate(x);
    fenwick_add(x, rates_[static_cast<std::size_t>(x)]);
  }
}

void SipSimulator::refresh(int x) {
  const double r = site_rate(x);
  const double delta = r - rates_[static_cast<std::size_t>(x)];
  if (delta != 0.0) {
    rates_[static_cast<std::size_t>(x)] = r;
    fenwick_add(x, delta);
  }
}

double SipSimulator::total_rate() const noexcept {
  double s = 0.0;
  for (int i = params_.L; i > 0; i -= i & -i) s += tree_[static_cast<std::size_t>(i)];
  return s;
}

void SipSimulator::run_until(double T, Rng& rng) {
  require(T >= time_, "SipSimulator::run_until: time must not decrease");
  const int R = params_.kernel.range();
  std::vector<double> jump_weight(static_cast<std::size_t>(2 * R));
  while (true) {
    double total = total_rate();
    if (!(total > 0.0)) {
      time_ = T;
      return;
    }
    const double dt = exponential(rng, total);
    if (time_ + dt > T) {
      time_ = T;
      return;
    }
    time_ += dt;

    int from = fenwick_find(uniform_open(rng) * total);
    if (rates_[static_cast<std::size_t>(from)] <= 0.0) {
      rebuild();
      total = total_rate();
      from = fenwick_find(uniform_open(rng) * total);
    }

    // target offset r in A with weight p(r) (k + eta_{from + r})
    double wsum = 0.0;
    for (int i = 0; i < 2 * R; ++i) {
      const int r = i < R ? i + 1 : -(i - R + 1);
      const double w = params_.kernel(r) * (params_.k + static_cast<double>(eta_[wrap(from + r)]));
      jump_weight[static_cast<std::size_t>(i)] = w;
      wsum += w;
    }
    double u = uniform_open(rng) * wsum;
    int pick = 2 * R - 1;
    for (int i = 0; i < 2 * R; ++i) {
      u -= jump_weight[static_cast<std::size_t>(i)];
      if (u <= 0.0) {
        pick = i;
        break;
      }
    }
    while (jump_weight[static_cast<std::size_t>(pick)] == 0.0) --pick;
    const int r = pick < R ? pick + 1 : -(pick - R + 1);
    const int to = wrap(from + r);

    eta_.move(from, to);
    ++events_;
    for (int d = -R; d <= R; ++d) {
      refresh(wrap(from + d));
      refresh(wrap(to + d));
    }
    if ((events_ & 0xFFFF) == 0) rebuild();
  }
}

Configuration simulate(const Configuration& eta0, const SipParams& params, double T, Rng& rng) {
  require(T >= 0.0, "simulate: T must be nonnegative");
  SipSimulator sim(eta0, params);
  sim.run_until(T, rng);
  return sim.state();
}

Configuration simulate(const Configuration& eta0, const SipParams& params, double T,
                       uint64_t seed) {
  Rng rng = make_rng(seed);
  return simulate(eta0, params, T, rng);
}

// ---------------------------------------------------------------------------

double duality_single(int64_t m, int64_t n, double k) {
  require(m >= 0 && n >= 0 && k > 0.0, "duality_single: need m, n >= 0 and k > 0");
  if (m > n) return 0.0;
  if (m == 0) return 1.0;
  if (m <= 64) {
    // falling factorial n (n-1) ... (n-m+1) over rising factorial k (k+1) ... (k+m-1)
    double v = 1.0;
    for (int64_t i = 0; i < m; ++i)
      v *= static_cast<double>(n - i) / (k + static_cast<double>(i));
    return v;
  }
  const double nn = static_cast<double>(n), mm = static_cast<double>(m);
  return std::exp(std::lgamma(nn + 1.0) - std::lgamma(nn - mm + 1.0) + std::lgamma(k) -
                  std::lgamma(k + mm));
}

double duality_D(const DualConfiguration& xi, const Configuration& eta, double k) {
  std::map<int64_t, int64_t> counts;
  const int64_t L = eta.size();
  for (int64_t x : xi.positions) ++counts[((x % L) + L) % L];
  double v = 1.0;
  for (const auto& [x, m] : counts) {
    v *= duality_single(m, eta[static_cast<int>(x)], k);
    if (v == 0.0) break;
  }
  return v;
}

Estimate mean_and_se(std::span<const double> samples) {
  const std::size_t n = samples.size();
  if (n == 0) return {};
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= static_cast<double>(n);
  if (n == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double s : samples) ss += (s - mean) * (s - mean);
  return {mean, std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n))};
}

DualityCheck duality_check(const DualConfiguration& xi, const Configuration& eta,
                           const SipParams& params, double t, int replicas, uint64_t seed,
                           unsigned threads) {
  params.validate();
  require(xi.positions.size() <= 3, "duality_check: at most three dual particles");
  require(eta.size() == params.L, "duality_check: eta must live on the lattice of size L");
  require(replicas >= 1 && t >= 0.0, "duality_check: need replicas >= 1 and t >= 0");

  const std::size_t n = static_cast<std::size_t>(replicas);
  std::vector<double> lhs(n), rhs(n);
  const Configuration xi_conf = xi.on_torus(params.L);
  parallel_for(n, threads, [&](std::size_t j) {
    Rng rng = make_rng(replica_seed(seed, 2 * j));
    lhs[j] = duality_D(xi, simulate(eta, params, t, rng), params.k);

    Rng rng2 = make_rng(replica_seed(seed, 2 * j + 1));
    const Configuration xi_t = simulate(xi_conf, params, t, rng2);
    DualConfiguration moved;
    for (int x = 0; x < params.L; ++x)
      for (int64_t c = 0; c < xi_t[x]; ++c) moved.positions.push_back(x);
    rhs[j] = duality_D(moved, eta, params.k);
  });
  return {mean_and_se(lhs), mean_and_se(rhs)};
}

}  // namespace sipkit
