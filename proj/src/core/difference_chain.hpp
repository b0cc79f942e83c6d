#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "kernel.hpp"
#include "rng.hpp"

namespace sipkit {

/// Difference w = x2 - x1 of two labelled SIP particles: jumps w -> w + r,
/// r in A, at rate 2 p(r) (k + 1{r = -w}).
struct DiffChainParams {
  double k;
  FiniteRangeKernel kernel;
  /// When false the indicator is dropped and the chain is a free symmetric
  /// walk with rates 2 k p(r).
  bool attraction = true;

  void validate() const;
  double rate(int64_t w, int64_t r) const noexcept;
  double outflow(int64_t w) const noexcept;
  /// max_w outflow(w)
  double max_outflow() const noexcept;
};

/// Condensive scaling: k_N = 1 / (sqrt2 gamma N), time factor
/// alpha(N, t) = gamma N^3 t / sqrt2, space scaled by 1/N.
struct ScaledDiffParams {
  int N;
  double gamma;
  FiniteRangeKernel kernel;

  void validate() const;
  double k_N() const noexcept;
  double time_factor(double t) const noexcept;
  DiffChainParams unscaled() const;
};

/// Reflecting window {-M, ..., M}; jumps leaving it are suppressed.
struct TruncationWindow {
  int64_t M;
};

struct TransitionOptions {
  double tolerance = 1e-10;
  std::optional<TruncationWindow> window;  // default: ceil(6 sqrt(Lambda t)) + R, doubled as needed
  int64_t min_window = 0;                  // lower bound on the default window
  double drop_threshold = 1e-30;
};

struct TransitionResult {
  double probability = 0.0;
  double error_bound = 0.0;
};

/// u(w) = P_w(w_t = 0) for every w of the window.
struct TransitionRow {
  int64_t M = 0;
  std::vector<double> values;  // index w + M
  double error_bound = 0.0;
  uint64_t steps = 0;
  bool window_doubled = false;

  double at(int64_t w) const noexcept {
    return (w < -M || w > M) ? 0.0 : values[static_cast<std::size_t>(w + M)];
  }
};

std::vector<std::pair<int64_t, double>> jump_rates(int64_t w, const DiffChainParams& params);

int64_t simulate_path(int64_t w0, const DiffChainParams& params, double t, Rng& rng);
/// Records (time, state) after every jump, starting with (0, w0).
int64_t simulate_path(int64_t w0, const DiffChainParams& params, double t, Rng& rng,
                      std::vector<std::pair<double, int64_t>>& path);

/// Uniformisation on the reflected chain. If the probability mass ever
/// reaches the window edge the computation is repeated on the doubled window
/// and the difference is added to the error bound; Error(WindowTooSmall) if
/// it exceeds the tolerance.
TransitionRow transition_row(const DiffChainParams& params, double t,
                             const TransitionOptions& options = {});
TransitionResult transition_prob(int64_t w0, const DiffChainParams& params, double t,
                                 const TransitionOptions& options = {});

/// nu_k(w) = 1 + 1/k at the origin, 1 elsewhere.
double stationary_weight(int64_t w, double k);

/// nu_k(w) rate(w -> w+r) - nu_k(w+r) rate(w+r -> w).
double detailed_balance_residual(int64_t w, int64_t r, const DiffChainParams& params);

/// P(w_N(t) = 0 | w_N(0) = w / N), i.e. the unscaled chain with k_N run for
/// alpha(N, t), started from the integer state w.
TransitionResult scaled_transition(int64_t w, double t, const ScaledDiffParams& params,
                                   const TransitionOptions& options = {});
TransitionRow scaled_transition_row(double t, const ScaledDiffParams& params,
                                    const TransitionOptions& options = {});

}  // namespace sipkit
