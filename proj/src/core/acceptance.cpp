#include "acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "difference_chain.hpp"
#include "dirichlet_forms.hpp"
#include "error.hpp"
#include "fluctuation_field.hpp"
#include "parallel.hpp"
#include "sip_lattice.hpp"
#include "sticky_bm.hpp"

namespace sipkit {

namespace {

constexpr double sqrt2 = std::numbers::sqrt2;

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c, d);
  return buf;
}

std::string list(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ' ';
    out += fmt("%.4g", xs[i]);
  }
  return out;
}

bool strictly_decreasing(const std::vector<double>& xs) {
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i] < xs[i - 1])) return false;
  return true;
}

// Scaled-chain rows at gamma = 1, t = 0.5, shared by the two convergence
// criteria.
struct ChainRows {
  std::vector<int> Ns{25, 50, 100, 200};
  std::vector<TransitionRow> rows;
};

class Suite {
 public:
  explicit Suite(const AcceptanceOptions& o) : opt_(o), threads_(resolve_threads(o.threads)) {}

  AcceptanceReport run() {
    using Fn = void (Suite::*)();
    const std::vector<std::pair<int, Fn>> all = {
        {1, &Suite::c1},  {2, &Suite::c2},   {3, &Suite::c3},   {4, &Suite::c4},   {5, &Suite::c5},
        {6, &Suite::c6},  {7, &Suite::c7},   {8, &Suite::c8},   {9, &Suite::c9},   {10, &Suite::c10},
        {11, &Suite::c11}, {12, &Suite::c12}, {13, &Suite::c13}};
    for (const auto& [n, fn] : all) {
      if (!opt_.only.empty() && !opt_.only.count(n)) continue;
      const auto start = std::chrono::steady_clock::now();
      try {
        (this->*fn)();
      } catch (const std::exception& e) {
        CriterionResult r;
        r.id = std::to_string(n);
        r.title = "criterion " + r.id;
        r.detail = std::string("exception: ") + e.what();
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        emit(std::move(r));
      }
    }
    return std::move(report_);
  }

 private:
  void emit(CriterionResult r) {
    if (opt_.on_result) opt_.on_result(r);
    report_.results.push_back(std::move(r));
  }

  // Times the body and records one result.
  template <class Body>
  void check(const std::string& id, const std::string& title, bool informational, Body&& body) {
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    r.id = id;
    r.title = title;
    r.informational = informational;
    body(r);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    emit(std::move(r));
  }

  // 1: atom + 2 int density = 1.
  void c1() {
    check("1", "sticky kernel normalisation", false, [&](CriterionResult& r) {
      double worst = 0.0;
      for (double g : {0.5, 1.0, 2.0})
        for (double t : {0.1, 1.0, 10.0})
          worst = std::max(worst, std::abs(StickyKernel::closed_form(g).total_mass(t) - 1.0));
      r.measured = worst;
      r.threshold = 1e-8;
      r.pass = worst <= r.threshold;
      r.detail = "max |atom + int density - 1| over 9 (gamma, t) cases";
    });
  }

  // 2: semigroup identity at the atom with weight sqrt2 gamma.
  void c2() {
    auto residual = [&](double weight_factor) {
      const double g = 1.0;
      const auto k = StickyKernel::closed_form(g);
      const double weight = weight_factor < 0 ? k.theta() : sqrt2 * g;
      return std::max(std::abs(k.chapman_kolmogorov_residual(0.5, 0.5, weight)),
                      std::abs(k.chapman_kolmogorov_residual(0.2, 1.0, weight)));
    };
    check("2", "semigroup identity at the atom (weight sqrt2 gamma)", false, [&](CriterionResult& r) {
      r.measured = residual(1.0);
      r.threshold = 1e-6;
      r.pass = r.measured <= r.threshold;
      r.detail = "max residual over (s,t) in {(0.5,0.5),(0.2,1)}, gamma=1";
    });
    check("2c", "semigroup identity with the kernel's own weight 1/(sqrt2 gamma)", true,
          [&](CriterionResult& r) {
            r.measured = residual(-1.0);
            r.threshold = 1e-6;
            r.pass = r.measured <= r.threshold;
            r.detail = "same cases; the closed form is the theta = 1/(sqrt2 gamma) kernel";
          });
  }

  // 3: detailed balance of the difference chain.
  void c3() {
    check("3", "difference chain detailed balance", false, [&](CriterionResult& r) {
      double worst = 0.0;
      for (const auto& kernel : {FiniteRangeKernel::nearest_neighbor(), FiniteRangeKernel::range_two()}) {
        const int R = kernel.range();
        for (double k : {0.1, 1.0, 10.0}) {
          const DiffChainParams p{k, kernel};
          for (int64_t w = -2 * R; w <= 2 * R; ++w)
            for (int64_t s = -R; s <= R; ++s) {
              if (s == 0) continue;
              const double scale = stationary_weight(w, k) * p.rate(w, s);
              const double res = detailed_balance_residual(w, s, p);
              worst = std::max(worst, scale > 0 ? std::abs(res) / scale : std::abs(res));
            }
        }
      }
      r.measured = worst;
      r.threshold = 1e-14;
      r.pass = worst <= r.threshold;
      r.detail = "max relative residual, |w| <= 2R, k in {0.1,1,10}, nn and range-2";
    });
  }

  // 4: uniformisation against simulation.
  void c4() {
    check("4", "uniformisation vs Monte Carlo (k=1, t=1)", false, [&](CriterionResult& r) {
      const DiffChainParams p{1.0, FiniteRangeKernel::nearest_neighbor()};
      const std::size_t reps = 100000;
      double worst = 0.0;
      std::string detail;
      for (int64_t w0 : {0, 1, 2}) {
        const double exact = transition_prob(w0, p, 1.0).probability;
        std::vector<char> hit(reps);
        parallel_for(reps, threads_, [&](std::size_t j) {
          Rng rng = make_rng(replica_seed(opt_.seed + 4000 + static_cast<uint64_t>(w0), j));
          hit[j] = simulate_path(w0, p, 1.0, rng) == 0;
        });
        double phat = 0.0;
        for (char h : hit) phat += h;
        phat /= static_cast<double>(reps);
        const double se = std::sqrt(phat * (1.0 - phat) / static_cast<double>(reps));
        const double z = std::abs(phat - exact) / se;
        worst = std::max(worst, z);
        detail += fmt("w0=%.0f: p=%.5f mc=%.5f z=%.2f; ", static_cast<double>(w0), exact, phat, z);
      }
      r.measured = worst;
      r.threshold = 4.0;
      r.pass = worst <= r.threshold;
      r.detail = detail + "measured = max |mc - p| / SE";
    });
  }

  const ChainRows& chain_rows() {
    if (rows_.rows.empty()) {
      rows_.rows.resize(rows_.Ns.size());
      parallel_for(rows_.Ns.size(), threads_, [&](std::size_t i) {
        rows_.rows[i] =
            scaled_transition_row(0.5, ScaledDiffParams{rows_.Ns[i], 1.0, FiniteRangeKernel::nearest_neighbor()});
      });
    }
    return rows_;
  }

  // 5: p_{alpha(N,t)}(0,0) against the sticky atom.
  void c5() {
    const double g = 1.0, t = 0.5;
    auto evaluate = [&](const StickyKernel& k, CriterionResult& r) {
      const auto& rows = chain_rows();
      const double target = k.mass_at_zero(t);
      std::vector<double> errs, vals;
      for (const auto& row : rows.rows) {
        vals.push_back(row.at(0));
        errs.push_back(std::abs(row.at(0) - target) / target);
      }
      r.measured = errs.back();
      r.threshold = 0.10;
      r.pass = strictly_decreasing(errs) && errs.back() <= r.threshold;
      r.detail = "N=25,50,100,200: p=" + list(vals) + " target=" + fmt("%.6f", target) +
                 " rel.err=" + list(errs);
    };
    check("5", "scaled chain atom -> e^{4g^2 t} erfc(2g sqrt t)", false,
          [&](CriterionResult& r) { evaluate(StickyKernel::closed_form(g), r); });
    check("5c", "scaled chain atom -> atom of the theta = sqrt2 gamma kernel", true,
          [&](CriterionResult& r) { evaluate(StickyKernel::scaling_limit(g), r); });
  }

  // 6: p_{alpha(N,t)}(floor(vN), 0) off the atom.
  void c6() {
    const double g = 1.0, t = 0.5;
    auto evaluate = [&](auto target_of, CriterionResult& r) {
      const auto& rows = chain_rows();
      bool ok = true;
      double last = 0.0;
      std::string detail;
      for (double v : {0.25, 0.5}) {
        const double target = target_of(v);
        std::vector<double> errs;
        for (std::size_t i = 0; i < rows.Ns.size(); ++i) {
          const auto w = static_cast<int64_t>(std::floor(v * rows.Ns[i]));
          errs.push_back(std::abs(rows.rows[i].at(w) - target));
        }
        ok = ok && strictly_decreasing(errs);
        last = std::max(last, errs.back());
        detail += fmt("v=%.2f target=%.6f", v, target) + " err=" + list(errs) + "; ";
      }
      r.measured = last;
      r.threshold = 0.0;
      r.pass = ok;
      r.detail = detail + "pass = errors decreasing in N";
    };
    check("6", "scaled chain off the atom -> sqrt2 gamma density", false, [&](CriterionResult& r) {
      evaluate([&](double v) { return hit_zero_prob_sqrt2gamma(v, t, g); }, r);
    });
    check("6c", "scaled chain off the atom -> P_v(X_t=0), theta = sqrt2 gamma", true,
          [&](CriterionResult& r) {
            const auto k = StickyKernel::scaling_limit(g);
            evaluate([&](double v) { return k.hit_zero_prob(v, t); }, r);
          });
  }

  // 7: the closed-form limit variance against its (u, v) representation.
  void c7() {
    const auto phi = TestFunction::raised_cosine(0.0, 1.0);
    const double rho = 1.0;
    check("7", "limit variance: closed form vs (u,v) form, endpoints", false, [&](CriterionResult& r) {
      double worst = 0.0;
      std::string detail;
      for (double g : {0.5, 1.0, 2.0})
        for (double t : {0.1, 0.5, 2.0}) {
          const double a = limit_variance(phi, rho, g, t).value;
          const double b = limit_variance_alt(phi, rho, g, t).value;
          worst = std::max(worst, std::abs(a - b));
          if (t == 0.5) detail += fmt("g=%.1f t=%.1f: %.6f vs %.6f; ", g, t, a, b);
        }
      const double plateau = sqrt2 * rho * rho * phi.l2_norm_sq();
      const double v0 = limit_variance(phi, rho, 1.0, 1e-6).value;
      const double vinf = limit_variance(phi, rho, 1.0, 1e3).value;
      const bool small_t = std::abs(v0) <= 1e-4 * plateau;
      const bool large_t = std::abs(vinf - plateau) <= 0.01 * plateau;
      r.measured = worst;
      r.threshold = 1e-6;
      r.pass = worst <= r.threshold && small_t && large_t;
      r.detail = detail + fmt("t=1e-6: V/plateau=%.3g, limit 1e-4 (", v0 / plateau) +
                 (small_t ? "ok); " : "exceeded); ") + fmt("t=1e3: V/plateau=%.6f, limit 1%% (", vinf / plateau) +
                 (large_t ? "ok)" : "exceeded)");
    });
    check("7c", "chain-consistent limit: second moment by two routes, endpoint rates", true,
          [&](CriterionResult& r) {
            const auto k = StickyKernel::scaling_limit(1.0);
            const double v = limit_variance_chain(phi, rho, 1.0, 1.0).value;
            const auto m = uncentred_second_moment(phi, rho, 1.0, k, v);
            const double plateau = sqrt2 * rho * rho * phi.l2_norm_sq();
            const double v0 = limit_variance_chain(phi, rho, 1.0, 1e-6).value;
            // The plateau is approached like t^{-1/2}: the gap shrinks by sqrt 10 per decade.
            const double gap3 = plateau - limit_variance_chain(phi, rho, 1.0, 1e3).value;
            const double gap4 = plateau - limit_variance_chain(phi, rho, 1.0, 1e4).value;
            const double rate = gap3 / gap4 / std::sqrt(10.0);
            r.measured = std::abs(m.from_variance - m.from_pair_kernel);
            r.threshold = 1e-5;
            r.pass = r.measured <= r.threshold && std::abs(v0) <= 1e-4 * plateau && std::abs(rate - 1.0) <= 0.05;
            r.detail = fmt("routes %.8f vs %.8f; t=1e-6: V/plateau=%.3g; ", m.from_variance, m.from_pair_kernel,
                           v0 / plateau) +
                       fmt("plateau gap t=1e3: %.4g, t=1e4: %.4g, ratio/sqrt10=%.4f", gap3, gap4, rate);
          });
  }

  // 8: finite-N variance approaches the limit.
  void c8() {
    const auto phi = TestFunction::raised_cosine(0.0, 1.0);
    const auto in = VarianceInputs::poisson(1.0, 1.0, 0.1);
    const std::vector<int> Ns{20, 40, 80};
    std::vector<double> finite(Ns.size());
    parallel_for(Ns.size(), threads_, [&](std::size_t i) {
      finite[i] = finite_variance(Ns[i], phi, in, FiniteRangeKernel::nearest_neighbor()).value;
    });
    auto evaluate = [&](double limit, CriterionResult& r) {
      std::vector<double> errs;
      for (double f : finite) errs.push_back(std::abs(f - limit));
      r.measured = errs.back();
      r.threshold = 0.0;
      r.pass = strictly_decreasing(errs);
      r.detail = "N=20,40,80: V_N=" + list(finite) + fmt(" limit=%.6f", limit) + " |diff|=" + list(errs);
    };
    check("8", "finite-N variance -> closed-form limit", false,
          [&](CriterionResult& r) { evaluate(limit_variance(phi, 1.0, 1.0, 0.1).value, r); });
    check("8c", "finite-N variance -> chain-consistent limit", true,
          [&](CriterionResult& r) { evaluate(limit_variance_chain(phi, 1.0, 1.0, 0.1).value, r); });
  }

  // 9: duality by simulation, and the two-point correlation formula.
  void c9() {
    check("9", "duality Monte Carlo and two-point correlations", false, [&](CriterionResult& r) {
      const auto nn = FiniteRangeKernel::nearest_neighbor();
      const SipParams small{1.0, nn, 16};
      const Configuration eta(std::vector<int64_t>{1, 2, 0, 1, 3, 0, 1, 0, 2, 1, 0, 0, 1, 2, 0, 1});
      const DualConfiguration xi{{4, 5}};
      const auto dc = duality_check(xi, eta, small, 0.5, 100000, opt_.seed + 9000, threads_);
      const double se1 = std::hypot(dc.configuration_side.se, dc.dual_side.se);
      const double z1 = std::abs(dc.configuration_side.mean - dc.dual_side.mean) / se1;

      // Covariances on L = 64 from Poisson(1) data, k = 1, t = 1.
      const int L = 64;
      const double k = 1.0, rho = 1.0, sigma = 1.0, t = 1.0;
      const SipParams big{k, nn, L};
      const std::size_t reps = 100000;
      std::vector<double> c0(reps), c1(reps);
      parallel_for(reps, threads_, [&](std::size_t j) {
        Rng rng = make_rng(replica_seed(opt_.seed + 9100, j));
        const Configuration start = sample_poisson_product(rho, L, rng);
        const Configuration end = simulate(start, big, t, rng);
        double s0 = 0.0, s1 = 0.0;
        for (int x = 0; x < L; ++x) {
          const double a = static_cast<double>(end[x]) - rho;
          const double b = static_cast<double>(end.at_periodic(x + 1)) - rho;
          s0 += a * a;
          s1 += a * b;
        }
        c0[j] = s0 / L;
        c1[j] = s1 / L;
      });
      const DiffChainParams dp{k, nn};
      auto formula = [&](int64_t d) {
        const double p = transition_prob(d, dp, t).probability;
        const double same = d == 0 ? 1.0 : 0.0;
        return (1.0 + same / k) * (k * sigma / (k + 1.0) - rho * rho) * p + same * (rho * rho / k + rho);
      };
      const Estimate e0 = mean_and_se(c0), e1 = mean_and_se(c1);
      const double f0 = formula(0), f1 = formula(1);
      const double z2 = std::abs(e0.mean - f0) / e0.se;
      const double z3 = std::abs(e1.mean - f1) / e1.se;
      r.measured = std::max({z1, z2, z3});
      r.threshold = 4.0;
      r.pass = r.measured <= r.threshold;
      r.detail = fmt("duality: %.5f vs %.5f (z=%.2f); ", dc.configuration_side.mean, dc.dual_side.mean, z1) +
                 fmt("cov d=0: mc %.5f formula %.5f (z=%.2f); ", e0.mean, f0, z2) +
                 fmt("cov d=1: mc %.5f formula %.5f (z=%.2f)", e1.mean, f1, z3);
    });
  }

  // 10: Mosco recovery sequence.
  void c10() {
    check("10", "Mosco II: E_N(Psi_N f) order and limit", false, [&](CriterionResult& r) {
      const auto f = TestFunction::raised_cosine(0.25, 1.0);
      const auto m = mosco2_sequence(f, {32, 64, 128, 256}, 1.0, FiniteRangeKernel::nearest_neighbor());
      const double rel = std::abs(m.extrapolated - m.target) / m.target;
      std::vector<double> vals;
      for (const auto& row : m.rows) vals.push_back(row.E_psi);
      r.measured = rel;
      r.threshold = 0.01;
      r.pass = m.slope >= 0.8 && m.slope <= 1.2 && rel <= r.threshold;
      r.detail = "E=" + list(vals) +
                 fmt(" slope=%.3f extrapolated=%.6f chi*int f'^2=%.6f (chi/2)*int f'^2=%.6f", m.slope,
                     m.extrapolated, m.target, m.half_target);
    });
  }

  GridFunction random_grid(Rng& rng, int N, int64_t lo, int64_t hi, bool mean_zero) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    GridFunction g;
    g.N = N;
    g.lo = lo;
    g.values.resize(static_cast<std::size_t>(hi - lo + 1));
    for (double& v : g.values) v = u(rng);
    if (mean_zero) {
      double s = 0.0;
      for (double v : g.values) s += v;
      for (double& v : g.values) v -= s / static_cast<double>(g.values.size());
    }
    return g;
  }

  // 11: E_N - R_N equals the closed-form gap.
  void c11() {
    check("11", "form domination: E_N - R_N = gap", false, [&](CriterionResult& r) {
      Rng rng = make_rng(opt_.seed + 11000);
      double worst = 0.0;
      const double gamma = 1.0;
      for (const auto& kernel : {FiniteRangeKernel::nearest_neighbor(), FiniteRangeKernel::range_two()})
        for (int N : {16, 64})
          for (int i = 0; i < 100; ++i) {
            const GridFunction g = random_grid(rng, N, -N, N, false);
            const double e = form_E_N(g, FormParams{gamma, kernel, N}).symmetric;
            const double rw = form_R_N(g, kernel).symmetric;
            const double gap = form_gap(g, FormParams{gamma * opt_.gap_gamma_factor, kernel, N});
            worst = std::max(worst, std::abs(e - rw - gap) / std::max(1.0, e));
            if (rw < 0.0 || e < rw) worst = std::max(worst, 1.0);
          }
      r.measured = worst;
      r.threshold = 1e-10;
      r.pass = worst <= r.threshold;
      r.detail = "max |E - R - gap| / max(1, E) over 100 random g, N in {16,64}, nn and range-2";
    });
  }

  // 12: dual form by Legendre transform and by Fourier integral.
  void c12() {
    check("12", "dual form: Legendre vs Fourier, infinity for nonzero mean", false, [&](CriterionResult& r) {
      Rng rng = make_rng(opt_.seed + 12000);
      double worst = 0.0;
      bool infinite_ok = true;
      for (const auto& kernel : {FiniteRangeKernel::nearest_neighbor(), FiniteRangeKernel::range_two()})
        for (int N : {16, 64}) {
          for (int i = 0; i < 100; ++i) {
            const GridFunction g = random_grid(rng, N, -N / 2, N / 2, true);
            const DualForm d = dual_form_rw(g, kernel);
            worst = std::max(worst, std::abs(d.legendre - d.fourier) / std::abs(d.fourier));
          }
          GridFunction g = random_grid(rng, N, -N / 2, N / 2, true);
          g.values[0] += 0.5;
          const DualForm d = dual_form_rw(g, kernel);
          infinite_ok = infinite_ok && d.infinite && std::isinf(d.legendre) && std::isinf(d.fourier);
        }
      r.measured = worst;
      r.threshold = 1e-8;
      r.pass = worst <= r.threshold && infinite_ok;
      r.detail = std::string("max relative difference over 100 random mean-zero g per (kernel, N); "
                             "nonzero mean -> inf: ") +
                 (infinite_ok ? "yes" : "no");
    });
  }

  // 13: potential kernel of the simple walk.
  void c13() {
    check("13", "potential kernel a(n) = |n| (nearest neighbour)", false, [&](CriterionResult& r) {
      const auto nn = FiniteRangeKernel::nearest_neighbor();
      double worst = 0.0;
      for (int64_t n = -20; n <= 20; ++n)
        worst = std::max(worst, std::abs(potential_kernel(n, nn) - static_cast<double>(std::abs(n))));
      const bool zero = potential_kernel(0, nn) == 0.0;
      r.measured = worst;
      r.threshold = 1e-10;
      r.pass = worst <= r.threshold && zero;
      r.detail = std::string("max |a(n) - |n||, |n| <= 20; a(0) == 0: ") + (zero ? "yes" : "no");
    });
  }

  const AcceptanceOptions& opt_;
  unsigned threads_;
  ChainRows rows_;
  AcceptanceReport report_;
};

}  // namespace

int AcceptanceReport::failures() const {
  int n = 0;
  for (const auto& r : results)
    if (!r.informational && !r.pass) ++n;
  return n;
}

ResultTable AcceptanceReport::table() const {
  ResultTable t;
  t.schema = "acceptance/1";
  t.columns = {"criterion", "kind", "status", "measured", "threshold", "seconds", "title", "detail"};
  for (const auto& r : results)
    t.add_row({r.id, r.informational ? "info" : "check", r.pass ? "PASS" : "FAIL", r.measured, r.threshold,
               r.seconds, r.title, r.detail});
  t.set_meta("failures", std::to_string(failures()));
  return t;
}

std::string format_result(const CriterionResult& r) {
  char head[96];
  std::snprintf(head, sizeof head, "%s %-4s %s", r.pass ? "PASS" : "FAIL", r.id.c_str(),
                r.informational ? "(info) " : "");
  char tail[96];
  std::snprintf(tail, sizeof tail, " [measured %.3g, threshold %.3g, %.2f s] ", r.measured, r.threshold,
                r.seconds);
  return std::string(head) + r.title + tail + r.detail;
}

AcceptanceReport acceptance_suite(const AcceptanceOptions& options) {
  Suite suite(options);
  return suite.run();
}

}  // namespace sipkit
