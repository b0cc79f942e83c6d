#pragma once

#include <cstdint>
#include <vector>

#include "kernel.hpp"
#include "test_function.hpp"

namespace sipkit {

/// A function on (1/N)Z stored on integer indices i (point i/N) of the
/// window [lo, hi]; it equals `exterior` outside the window.
struct GridFunction {
  int N = 1;
  int64_t lo = 0;
  std::vector<double> values;
  double exterior = 0.0;

  int64_t hi() const noexcept { return lo + static_cast<int64_t>(values.size()) - 1; }
  double operator()(int64_t i) const noexcept {
    return (i < lo || i > hi()) ? exterior : values[static_cast<std::size_t>(i - lo)];
  }
  double& at(int64_t i) { return values.at(static_cast<std::size_t>(i - lo)); }
  /// sum g(i) / N over the window.
  double grid_mean() const noexcept;
};

struct FormParams {
  double gamma;
  FiniteRangeKernel kernel;
  int N;

  void validate() const;
};

/// Index window covering supp f and [-R, R], inflated by 2R.
std::pair<int64_t, int64_t> grid_window(const TestFunction& f, int N, int R);

/// Restriction of f to the grid on the window [-W, W] (W in space units);
/// for compact f the window is widened to cover the support.
GridFunction phi_N(const TestFunction& f, int N, double W);
GridFunction phi_N(const TestFunction& f, int N, int64_t lo, int64_t hi);
/// Phi_N f with the values on the jump set A_N replaced by f(0).
GridFunction psi_N(const TestFunction& f, int N, const FiniteRangeKernel& kernel, double W);
GridFunction psi_N(const TestFunction& f, int N, const FiniteRangeKernel& kernel, int64_t lo,
                   int64_t hi);

/// (1/N) sum g^2 and its version with the atom sqrt2 gamma g(0)^2.
double norm_rw_sq(const GridFunction& g);
double norm_sip_sq(const GridFunction& g, double gamma);

struct FormValue {
  double symmetric = 0.0;  // sum of squares, authoritative
  double literal = 0.0;    // -sum g L g nu
};

/// Form of the scaled difference chain on L^2(nu_{gamma,N}),
/// nu_{gamma,N} = 1/N + sqrt2 gamma delta_0, jump rates
/// 2 p(r) (N^2/2 + (N^3 gamma / sqrt2) 1{r = -w}).
FormValue form_E_N(const GridFunction& g, const FormParams& params);
/// Random-walk form -sum g Delta_N g / N, Delta_N g(x) = N^2 sum p(r)(g(x+r) - g(x)).
FormValue form_R_N(const GridFunction& g, const FiniteRangeKernel& kernel);
/// (N^2 gamma / sqrt2) sum_{r in A} 2 p(r) (g(r) - g(0))^2.
double form_gap(const GridFunction& g, const FormParams& params);

struct MoscoRow {
  int N = 0;
  double E_psi = 0.0;      // E_N(Psi_N f)
  double R_phi = 0.0;      // R_N(Phi_N f)
  double E_phi = 0.0;      // E_N(Phi_N f)
  double norm_rw = 0.0;    // ||Phi_N f||^2 in H_N^rw
  double norm_sip = 0.0;   // ||Phi_N f||^2 in H_N^sip
  double psi_phi_gap = 0.0;  // ||Psi_N f - Phi_N f||^2 in H_N^sip
};

struct MoscoSequence {
  std::vector<MoscoRow> rows;
  double target = 0.0;             // chi int f'^2
  double half_target = 0.0;       // (chi / 2) int f'^2
  double order_differences = 0.0;  // from the last three values
  double extrapolated = 0.0;       // Richardson with that order
  double slope = 0.0;              // least-squares slope of log|E - target| vs log N
};

MoscoSequence mosco2_sequence(const TestFunction& f, const std::vector<int>& Ns, double gamma,
                              const FiniteRangeKernel& kernel);

/// a(n) = (1/2pi) int (1 - cos nk) / phihat(k) dk, phihat(k) = sum 2 p(r)(1 - cos rk).
/// Satisfies sum_r p(r)(a(n+r) - a(n)) = delta_0(n).
double potential_kernel(int64_t n, const FiniteRangeKernel& kernel);

struct DualForm {
  double legendre = 0.0;
  double fourier = 0.0;
  bool infinite = false;
};

/// R_N^*(g) = sup_h <g, h> - R_N(h) on H_N^rw, by a banded solve of the
/// stationarity condition on the window padded by `pad` sites (reflecting,
/// one node pinned) and by the Fourier integral
/// (1 / 4N^3)(1/2pi) int |ghat|^2 / phihat. Infinite when |sum g / N| > 1e-8.
DualForm dual_form_rw(const GridFunction& g, const FiniteRangeKernel& kernel, int64_t pad = 64);

struct ContinuumForms {
  double bm = 0.0;   // (1/2) int f'^2
  double sbm = 0.0;  // (chi/2) int f'^2
};

ContinuumForms continuum_forms(const TestFunction& f, double chi);

}  // namespace sipkit
