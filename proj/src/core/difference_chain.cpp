#include "difference_chain.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <string>

#include "error.hpp"
#include "result_table.hpp"

namespace sipkit {

void DiffChainParams::validate() const {
  require(k > 0.0 && std::isfinite(k), "difference chain: k must be positive");
}

double DiffChainParams::rate(int64_t w, int64_t r) const noexcept {
  const double p = kernel(r);
  if (p == 0.0) return 0.0;
  return 2.0 * p * (k + ((attraction && r == -w) ? 1.0 : 0.0));
}

double DiffChainParams::outflow(int64_t w) const noexcept {
  double s = 0.0;
  const int R = kernel.range();
  for (int r = 1; r <= R; ++r) s += rate(w, r) + rate(w, -r);
  return s;
}

double DiffChainParams::max_outflow() const noexcept {
  double m = outflow(kernel.range() + 1);
  for (int64_t w = -kernel.range(); w <= kernel.range(); ++w) m = std::max(m, outflow(w));
  return m;
}

void ScaledDiffParams::validate() const {
  require(N >= 1, "scaled chain: N must be >= 1");
  require(gamma > 0.0 && std::isfinite(gamma), "scaled chain: gamma must be positive");
}

double ScaledDiffParams::k_N() const noexcept { return 1.0 / (std::sqrt(2.0) * gamma * N); }

double ScaledDiffParams::time_factor(double t) const noexcept {
  const double n = N;
  return gamma * n * n * n * t / std::sqrt(2.0);
}

DiffChainParams ScaledDiffParams::unscaled() const { return {k_N(), kernel, true}; }

std::vector<std::pair<int64_t, double>> jump_rates(int64_t w, const DiffChainParams& params) {
  params.validate();
  std::vector<std::pair<int64_t, double>> out;
  const int R = params.kernel.range();
  for (int64_t r = -R; r <= R; ++r) {
    if (r == 0) continue;
    const double q = params.rate(w, r);
    if (q > 0.0) out.emplace_back(r, q);
  }
  return out;
}

namespace {

int64_t run_path(int64_t w, const DiffChainParams& params, double t, Rng& rng,
                 std::vector<std::pair<double, int64_t>>* path) {
  params.validate();
  require(t >= 0.0, "simulate_path: t must be >= 0");
  const int R = params.kernel.range();
  // Jumps r in A in the order -R..-1, 1..R.
  std::vector<int64_t> jumps;
  std::vector<double> bulk;
  for (int64_t r = -R; r <= R; ++r) {
    if (r == 0 || params.kernel(r) == 0.0) continue;
    jumps.push_back(r);
    bulk.push_back(2.0 * params.kernel(r) * params.k);
  }
  double bulk_total = 0.0;
  for (double q : bulk) bulk_total += q;

  std::vector<double> rates(jumps.size());
  double s = 0.0;
  if (path) path->emplace_back(0.0, w);
  while (true) {
    double total = bulk_total;
    const bool near = params.attraction && w >= -R && w <= R && w != 0;
    if (near) {
      total = 0.0;
      for (std::size_t i = 0; i < jumps.size(); ++i) {
        rates[i] = params.rate(w, jumps[i]);
        total += rates[i];
      }
    }
    s += exponential(rng, total);
    if (s > t) break;
    const auto& table = near ? rates : bulk;
    double u = uniform_open(rng) * total;
    std::size_t i = 0;
    while (i + 1 < jumps.size() && u >= table[i]) u -= table[i++];
    w += jumps[i];
    if (path) path->emplace_back(s, w);
  }
  return w;
}

struct PoissonWeights {
  uint64_t left = 0;
  std::vector<double> w;
  double tail = 0.0;  // bound on the neglected mass
};

// Weights of Poisson(m), built outward from the mode and normalised.
PoissonWeights poisson_weights(double m) {
  constexpr double cut = 1e-32;
  PoissonWeights out;
  if (m <= 0.0) {
    out.w = {1.0};
    return out;
  }
  const auto mode = static_cast<uint64_t>(std::floor(m));
  std::vector<double> up{1.0}, down;
  double cur = 1.0, tail = 0.0;
  for (uint64_t n = mode;; ++n) {
    cur *= m / static_cast<double>(n + 1);
    const double ratio = m / static_cast<double>(n + 2);
    if (cur < cut && ratio < 1.0) {
      tail += cur / (1.0 - ratio);
      break;
    }
    up.push_back(cur);
  }
  cur = 1.0;
  uint64_t n = mode;
  for (; n > 0; --n) {
    cur *= static_cast<double>(n) / m;
    if (cur < cut) {
      const double ratio = static_cast<double>(n - 1) / m;
      tail += cur / (1.0 - ratio);
      break;
    }
    down.push_back(cur);
  }
  out.left = mode - down.size();
  out.w.assign(down.rbegin(), down.rend());
  out.w.insert(out.w.end(), up.begin(), up.end());
  double sum = 0.0;
  for (double x : out.w) sum += x;
  for (double& x : out.w) x /= sum;
  out.tail = tail / sum;
  return out;
}

struct RawRow {
  TransitionRow row;
  // sum_n Poisson(n) max_{j <= n} (value within R of the window edge at step j)
  double edge_weight = 0.0;
};

// Backward uniformisation u <- (I + Q/Lambda) u from u = 1_{0} on the
// reflected window; sum_n Poisson(n; Lambda t) u_n(w) = P_w(w_t = 0).
RawRow uniformize(const DiffChainParams& params, double t, int64_t M, double drop) {
  const int R = params.kernel.range();
  const double lambda = params.max_outflow();
  const double m = lambda * t;
  const PoissonWeights pw = poisson_weights(m);
  const uint64_t right = pw.left + pw.w.size() - 1;

  const auto size = static_cast<std::size_t>(2 * M + 1);
  std::vector<double> u(size, 0.0), next(size, 0.0), acc(size, 0.0);
  auto idx = [M](int64_t w) { return static_cast<std::size_t>(w + M); };
  u[idx(0)] = 1.0;
  int64_t lo = 0, hi = 0;

  std::vector<double> c(static_cast<std::size_t>(R + 1), 0.0);
  double c0 = 0.0;
  for (int r = 1; r <= R; ++r) {
    c[static_cast<std::size_t>(r)] = 2.0 * params.kernel(r) * params.k / lambda;
    c0 += 2.0 * c[static_cast<std::size_t>(r)];
  }

  RawRow out;
  double trim_error = 0.0;
  uint64_t steps = 0;
  double edge = 0.0;
  for (uint64_t n = 0;; ++n) {
    if (n >= pw.left) {
      const double wn = pw.w[n - pw.left];
      for (int64_t w = lo; w <= hi; ++w) acc[idx(w)] += wn * u[idx(w)];
      out.edge_weight += wn * edge;
    }
    if (n == right) break;

    const int64_t nlo = std::max(lo - R, -M), nhi = std::min(hi + R, M);
    for (int64_t w = nlo; w <= nhi; ++w) {
      const double uw = u[idx(w)];
      const int64_t aw = w < 0 ? -w : w;
      if (aw > R && aw <= M - R) {
        double s = uw * (1.0 - c0);
        for (int r = 1; r <= R; ++r) s += c[static_cast<std::size_t>(r)] * (u[idx(w + r)] + u[idx(w - r)]);
        next[idx(w)] = s;
      } else {
        double s = 0.0;
        for (int r = 1; r <= R; ++r) {
          double plus = 0.0, minus = 0.0;
          if (w + r <= M) plus = params.rate(w, r) / lambda * (u[idx(w + r)] - uw);
          if (w - r >= -M) minus = params.rate(w, -r) / lambda * (u[idx(w - r)] - uw);
          s += plus + minus;
        }
        next[idx(w)] = uw + s;
      }
    }
    std::swap(u, next);
    for (int64_t w = lo; w <= hi; ++w) next[idx(w)] = 0.0;
    lo = nlo;
    hi = nhi;

    double dropped = 0.0;
    while (lo < hi && std::abs(u[idx(lo)]) < drop) {
      dropped = std::max(dropped, std::abs(u[idx(lo)]));
      u[idx(lo)] = 0.0;
      ++lo;
    }
    while (hi > lo && std::abs(u[idx(hi)]) < drop) {
      dropped = std::max(dropped, std::abs(u[idx(hi)]));
      u[idx(hi)] = 0.0;
      --hi;
    }
    trim_error += dropped;
    if (lo <= -M + R) edge = std::max(edge, std::abs(u[idx(-M + R)]));
    if (hi >= M - R) edge = std::max(edge, std::abs(u[idx(M - R)]));
    ++steps;
  }

  out.row.M = M;
  out.row.values = std::move(acc);
  out.row.steps = steps;
  out.row.error_bound =
      pw.tail + trim_error + 8.0 * DBL_EPSILON * std::sqrt(static_cast<double>(steps) + 1.0);
  return out;
}

}  // namespace

int64_t simulate_path(int64_t w0, const DiffChainParams& params, double t, Rng& rng) {
  return run_path(w0, params, t, rng, nullptr);
}

int64_t simulate_path(int64_t w0, const DiffChainParams& params, double t, Rng& rng,
                      std::vector<std::pair<double, int64_t>>& path) {
  path.clear();
  return run_path(w0, params, t, rng, &path);
}

TransitionRow transition_row(const DiffChainParams& params, double t,
                             const TransitionOptions& options) {
  params.validate();
  require(t >= 0.0 && std::isfinite(t), "transition_row: t must be >= 0");
  require(options.tolerance > 0.0, "transition_row: tolerance must be positive");
  const int R = params.kernel.range();
  int64_t M;
  if (options.window) {
    M = options.window->M;
    require(M > R, "transition_row: window M must exceed the kernel range");
  } else {
    M = static_cast<int64_t>(std::ceil(6.0 * std::sqrt(params.max_outflow() * t))) + R + 1;
    M = std::max(M, options.min_window);
  }

  RawRow first = uniformize(params, t, M, options.drop_threshold);
  // A path that feels the reflection passes through the edge band, from where
  // it is back at 0 after j more steps with probability u_j(edge); the factor
  // 2 covers the unreflected chain. Doubling verifies the estimate; a fixed
  // window fails on the first disagreement, an automatic one keeps growing.
  for (int attempt = 0;; ++attempt) {
    if (2.0 * first.edge_weight <= 1e-2 * options.tolerance) {
      first.row.error_bound += 2.0 * first.edge_weight;
      return first.row;
    }
    RawRow second = uniformize(params, t, 2 * M, options.drop_threshold);
    double diff = 0.0;
    for (int64_t w = -M; w <= M; ++w) diff = std::max(diff, std::abs(first.row.at(w) - second.row.at(w)));
    const bool fixed = options.window.has_value();
    if (diff <= options.tolerance || (!fixed && attempt >= 8)) {
      if (diff > options.tolerance) {
        fail(ErrorCode::WindowTooSmall, "transition_row: doubling the window from M=" + std::to_string(M) +
                                            " changed the result by " + format_number(diff));
      }
      second.row.window_doubled = true;
      second.row.error_bound += diff + 2.0 * second.edge_weight;
      return second.row;
    }
    if (fixed) {
      fail(ErrorCode::WindowTooSmall, "transition_row: doubling the window from M=" + std::to_string(M) +
                                          " changed the result by " + format_number(diff));
    }
    first = std::move(second);
    M *= 2;
  }
}

TransitionResult transition_prob(int64_t w0, const DiffChainParams& params, double t,
                                 const TransitionOptions& options) {
  TransitionOptions opts = options;
  if (opts.window) require(std::abs(w0) <= opts.window->M, "transition_prob: |w0| exceeds the window");
  else opts.min_window = std::max(opts.min_window, std::abs(w0) + params.kernel.range() + 1);
  const TransitionRow row = transition_row(params, t, opts);
  return {row.at(w0), row.error_bound};
}

double stationary_weight(int64_t w, double k) {
  require(k > 0.0, "stationary_weight: k must be positive");
  return w == 0 ? 1.0 + 1.0 / k : 1.0;
}

double detailed_balance_residual(int64_t w, int64_t r, const DiffChainParams& params) {
  params.validate();
  return stationary_weight(w, params.k) * params.rate(w, r) -
         stationary_weight(w + r, params.k) * params.rate(w + r, -r);
}

TransitionRow scaled_transition_row(double t, const ScaledDiffParams& params,
                                    const TransitionOptions& options) {
  params.validate();
  return transition_row(params.unscaled(), params.time_factor(t), options);
}

TransitionResult scaled_transition(int64_t w, double t, const ScaledDiffParams& params,
                                   const TransitionOptions& options) {
  params.validate();
  return transition_prob(w, params.unscaled(), params.time_factor(t), options);
}

}  // namespace sipkit
