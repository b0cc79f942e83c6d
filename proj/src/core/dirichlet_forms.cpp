#include "dirichlet_forms.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "error.hpp"
#include "quadrature.hpp"

namespace sipkit {

namespace {

constexpr double sqrt2 = std::numbers::sqrt2;
constexpr double pi = std::numbers::pi;

double sq(double x) { return x * x; }

// Trapezoid rule on [-pi, pi) for a smooth 2pi-periodic integrand, doubling
// the node count until two estimates agree; returns (1/2pi) int f.
template <class F>
double periodic_mean(F&& f, std::size_t start, double rel_tol) {
  std::size_t n = std::max<std::size_t>(start, 16);
  auto mean = [&](std::size_t m) {
    double s = 0.0;
    for (std::size_t j = 0; j < m; ++j) s += f(-pi + 2.0 * pi * static_cast<double>(j) / m);
    return s / static_cast<double>(m);
  };
  double prev = mean(n);
  for (int it = 0; it < 16; ++it) {
    n *= 2;
    const double cur = mean(n);
    if (std::abs(cur - prev) <= rel_tol * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  fail(ErrorCode::QuadratureNotConverged, "periodic trapezoid rule did not converge");
}

double symbol(const FiniteRangeKernel& kernel, double k) {
  double s = 0.0;
  const int R = kernel.range();
  for (int r = 1; r <= R; ++r) s += 4.0 * kernel(r) * sq(std::sin(0.5 * r * k));
  return s;
}

}  // namespace

double GridFunction::grid_mean() const noexcept {
  double s = 0.0;
  for (double v : values) s += v;
  return s / N;
}

void FormParams::validate() const {
  require(gamma > 0.0, "forms: gamma must be positive");
  require(N >= 1, "forms: N must be >= 1");
}

std::pair<int64_t, int64_t> grid_window(const TestFunction& f, int N, int R) {
  int64_t lo = -R, hi = R;
  if (f.compact() && f.support_lo() <= f.support_hi()) {
    lo = std::min(lo, static_cast<int64_t>(std::floor(f.support_lo() * N)));
    hi = std::max(hi, static_cast<int64_t>(std::ceil(f.support_hi() * N)));
  }
  return {lo - 2 * R, hi + 2 * R};
}

GridFunction phi_N(const TestFunction& f, int N, int64_t lo, int64_t hi) {
  require(N >= 1 && hi >= lo, "phi_N: bad window");
  GridFunction g;
  g.N = N;
  g.lo = lo;
  g.values.resize(static_cast<std::size_t>(hi - lo + 1));
  for (int64_t i = lo; i <= hi; ++i) g.at(i) = f(static_cast<double>(i) / N);
  g.exterior = f.compact() ? 0.0 : f(0.0);
  return g;
}

GridFunction phi_N(const TestFunction& f, int N, double W) {
  require(W >= 0.0, "phi_N: W must be >= 0");
  auto lo = -static_cast<int64_t>(std::ceil(W * N));
  auto hi = -lo;
  if (f.compact() && f.support_lo() <= f.support_hi()) {
    require(f.support_lo() >= -W - 1e-12 && f.support_hi() <= W + 1e-12,
            "phi_N: supp f must lie in [-W, W]");
  }
  return phi_N(f, N, lo, hi);
}

GridFunction psi_N(const TestFunction& f, int N, const FiniteRangeKernel& kernel, int64_t lo,
                   int64_t hi) {
  const int R = kernel.range();
  require(lo <= -R && hi >= R, "psi_N: window must contain the jump set");
  GridFunction g = phi_N(f, N, lo, hi);
  const double f0 = f(0.0);
  for (int r = 1; r <= R; ++r) {
    if (kernel(r) == 0.0) continue;
    g.at(r) = f0;
    g.at(-r) = f0;
  }
  return g;
}

GridFunction psi_N(const TestFunction& f, int N, const FiniteRangeKernel& kernel, double W) {
  GridFunction g = phi_N(f, N, W);
  const int R = kernel.range();
  return psi_N(f, N, kernel, std::min<int64_t>(g.lo, -R), std::max<int64_t>(g.hi(), R));
}

double norm_rw_sq(const GridFunction& g) {
  if (g.exterior != 0.0) return std::numeric_limits<double>::infinity();
  double s = 0.0;
  for (double v : g.values) s += v * v;
  return s / g.N;
}

double norm_sip_sq(const GridFunction& g, double gamma) {
  return norm_rw_sq(g) + sqrt2 * gamma * sq(g(0));
}

FormValue form_E_N(const GridFunction& g, const FormParams& params) {
  params.validate();
  require(g.N == params.N, "form_E_N: grid N differs from the form's N");
  const int R = params.kernel.range();
  const double N = params.N;
  const double atom = sqrt2 * params.gamma;

  // nu(w) c(w, r) = p(r) N + sqrt2 gamma N^2 p(r) (1{w=0} + 1{w=-r})
  FormValue out;
  double bulk = 0.0;
  for (int64_t w = g.lo - R; w <= g.hi(); ++w)
    for (int r = 1; r <= R; ++r) bulk += params.kernel(r) * sq(g(w + r) - g(w));
  double inclusion = 0.0;
  for (int r = 1; r <= R; ++r)
    inclusion += params.kernel(r) * (sq(g(r) - g(0)) + sq(g(-r) - g(0)));
  out.symmetric = N * bulk + atom * N * N * inclusion;

  double lit = 0.0;
  for (int64_t w = g.lo - R; w <= g.hi() + R; ++w) {
    const double nu = 1.0 / N + (w == 0 ? atom : 0.0);
    double inner = 0.0;
    for (int64_t r = -R; r <= R; ++r) {
      if (r == 0) continue;
      const double rate =
          2.0 * params.kernel(r) * (N * N / 2.0 + (r == -w ? N * N * N * params.gamma / sqrt2 : 0.0));
      inner += rate * (g(w + r) - g(w));
    }
    lit -= g(w) * inner * nu;
  }
  out.literal = lit;
  return out;
}

FormValue form_R_N(const GridFunction& g, const FiniteRangeKernel& kernel) {
  const int R = kernel.range();
  const double N = g.N;
  FormValue out;
  double bulk = 0.0;
  for (int64_t w = g.lo - R; w <= g.hi(); ++w)
    for (int r = 1; r <= R; ++r) bulk += kernel(r) * sq(g(w + r) - g(w));
  out.symmetric = N * bulk;

  double lit = 0.0;
  for (int64_t w = g.lo - R; w <= g.hi() + R; ++w) {
    double lap = 0.0;
    for (int64_t r = -R; r <= R; ++r)
      if (r != 0) lap += kernel(r) * (g(w + r) - g(w));
    lit -= g(w) * N * N * lap / N;
  }
  out.literal = lit;
  return out;
}

double form_gap(const GridFunction& g, const FormParams& params) {
  params.validate();
  const int R = params.kernel.range();
  const double N = params.N;
  double s = 0.0;
  for (int64_t r = -R; r <= R; ++r)
    if (r != 0) s += 2.0 * params.kernel(r) * sq(g(r) - g(0));
  return N * N * params.gamma / sqrt2 * s;
}

MoscoSequence mosco2_sequence(const TestFunction& f, const std::vector<int>& Ns, double gamma,
                              const FiniteRangeKernel& kernel) {
  require(!Ns.empty(), "mosco2_sequence: empty N list");
  for (std::size_t i = 1; i < Ns.size(); ++i)
    require(Ns[i] > Ns[i - 1], "mosco2_sequence: N list must be increasing");
  MoscoSequence out;
  const double chi = kernel.chi();
  out.target = chi * f.dirichlet_integral();
  out.half_target = 0.5 * chi * f.dirichlet_integral();
  const int R = kernel.range();
  for (int N : Ns) {
    const auto [lo, hi] = grid_window(f, N, R);
    const FormParams params{gamma, kernel, N};
    const GridFunction phi = phi_N(f, N, lo, hi);
    const GridFunction psi = psi_N(f, N, kernel, lo, hi);
    MoscoRow row;
    row.N = N;
    row.E_psi = form_E_N(psi, params).symmetric;
    row.E_phi = form_E_N(phi, params).symmetric;
    row.R_phi = form_R_N(phi, kernel).symmetric;
    row.norm_rw = norm_rw_sq(phi);
    row.norm_sip = norm_sip_sq(phi, gamma);
    GridFunction diff = psi;
    for (int64_t i = lo; i <= hi; ++i) diff.at(i) -= phi(i);
    diff.exterior = psi.exterior - phi.exterior;
    row.psi_phi_gap = norm_sip_sq(diff, gamma);
    out.rows.push_back(row);
  }

  const std::size_t n = out.rows.size();
  out.extrapolated = out.rows.back().E_psi;
  if (n >= 3) {
    const auto& a = out.rows[n - 3];
    const auto& b = out.rows[n - 2];
    const auto& c = out.rows[n - 1];
    const double d1 = b.E_psi - a.E_psi, d2 = c.E_psi - b.E_psi;
    if (d1 != 0.0 && d2 != 0.0 && d1 / d2 > 0.0) {
      // for geometric N the ratio of successive differences is (N_{i+1}/N_i)^p
      out.order_differences = std::log(d1 / d2) / std::log(static_cast<double>(c.N) / b.N);
      const double q = std::pow(static_cast<double>(c.N) / b.N, out.order_differences);
      out.extrapolated = c.E_psi + d2 / (q - 1.0);
    }
  }
  if (n >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t m = 0;
    for (const auto& r : out.rows) {
      const double e = std::abs(r.E_psi - out.target);
      if (e <= 0.0) continue;
      const double x = std::log(static_cast<double>(r.N)), y = std::log(e);
      sx += x, sy += y, sxx += x * x, sxy += x * y, ++m;
    }
    if (m >= 2) out.slope = -(m * sxy - sx * sy) / (m * sxx - sx * sx);
  }
  return out;
}

double potential_kernel(int64_t n, const FiniteRangeKernel& kernel) {
  if (n == 0) return 0.0;
  const double chi = kernel.chi();
  const double nn = static_cast<double>(n);
  auto f = [&](double k) {
    const double s = symbol(kernel, k);
    // removable point: (n^2 k^2 / 2) / (chi k^2)
    if (std::abs(k) < 1e-6) return nn * nn / (2.0 * chi);
    return 2.0 * sq(std::sin(0.5 * nn * k)) / s;
  };
  const auto start = static_cast<std::size_t>(8 * (std::abs(n) + kernel.range()));
  return periodic_mean(f, start, 1e-15);
}

DualForm dual_form_rw(const GridFunction& g, const FiniteRangeKernel& kernel, int64_t pad) {
  DualForm out;
  require(g.exterior == 0.0, "dual_form_rw: g must vanish outside its window");
  const double mean = g.grid_mean();
  if (std::abs(mean) > 1e-8) {
    out.infinite = true;
    out.legendre = out.fourier = std::numeric_limits<double>::infinity();
    return out;
  }
  const int R = kernel.range();
  const double N = g.N;
  // mean-zero projection on the window
  std::vector<double> v = g.values;
  const double shift = mean * N / static_cast<double>(v.size());
  for (double& x : v) x -= shift;

  // (a) Legendre: (-L) h = g on the padded window with reflection, last node
  // pinned; R^* = (1 / 4N^3) <g, h>.
  {
    const int64_t n = static_cast<int64_t>(v.size()) + 2 * pad;
    if (n - 1 < R + 1) fail(ErrorCode::SingularSystem, "dual_form_rw: window too small");
    const lapack_int m = static_cast<lapack_int>(n - 1);
    const lapack_int kd = R;
    const lapack_int ldab = kd + 1;
    std::vector<double> ab(static_cast<std::size_t>(ldab) * static_cast<std::size_t>(m), 0.0);
    auto band = [&](int64_t i, int64_t j) -> double& {  // i <= j, upper storage
      return ab[static_cast<std::size_t>(kd + i - j + j * ldab)];
    };
    for (int64_t i = 0; i < m; ++i) {
      double diag = 0.0;
      for (int r = 1; r <= R; ++r) {
        if (i + r < n) diag += kernel(r);
        if (i - r >= 0) diag += kernel(r);
        if (i + r < m) band(i, i + r) = -kernel(r);
      }
      band(i, i) = diag;
    }
    std::vector<double> b(static_cast<std::size_t>(m), 0.0);
    for (std::size_t j = 0; j < v.size(); ++j) {
      const int64_t i = static_cast<int64_t>(j) + pad;
      if (i < m) b[static_cast<std::size_t>(i)] = v[j];
    }
    const std::vector<double> rhs = b;
    const lapack_int info = LAPACKE_dpbsv(LAPACK_COL_MAJOR, 'U', m, kd, 1, ab.data(), ldab, b.data(), m);
    if (info != 0)
      fail(ErrorCode::SingularSystem, "dual_form_rw: banded solve failed (info " + std::to_string(info) + ")");
    double s = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) s += rhs[i] * b[i];
    out.legendre = s / (4.0 * N * N * N);
  }

  // (b) Fourier: (1 / 4N^3)(1/2pi) int |ghat|^2 / phihat; at k = 0 the
  // integrand tends to m1^2 / chi with m1 = sum x g(x).
  {
    double m1 = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) m1 += static_cast<double>(g.lo + static_cast<int64_t>(j)) * v[j];
    const double chi = kernel.chi();
    auto f = [&](double k) {
      if (std::abs(k) < 1e-7) return m1 * m1 / chi;
      std::complex<double> ghat = 0.0;
      const std::complex<double> step = std::polar(1.0, k);
      std::complex<double> e = std::polar(1.0, k * static_cast<double>(g.lo));
      for (double x : v) {
        ghat += x * e;
        e *= step;
      }
      return std::norm(ghat) / symbol(kernel, k);
    };
    const auto start = static_cast<std::size_t>(4 * (v.size() + static_cast<std::size_t>(R)));
    out.fourier = periodic_mean(f, start, 1e-14) / (4.0 * N * N * N);
  }
  return out;
}

ContinuumForms continuum_forms(const TestFunction& f, double chi) {
  require(chi > 0.0, "continuum_forms: chi must be positive");
  if (!f.compact() || f.support_lo() > f.support_hi()) return {};
  const auto r = integrate([&](double x) { return sq(f.derivative(x)); }, f.support_lo(),
                           f.support_hi(), 1e-14, 1e-14);
  return {0.5 * r.value, 0.5 * chi * r.value};
}

}  // namespace sipkit
