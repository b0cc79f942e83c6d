#include "experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>

#include "acceptance.hpp"
#include "difference_chain.hpp"
#include "dirichlet_forms.hpp"
#include "error.hpp"
#include "fluctuation_field.hpp"
#include "kernel.hpp"
#include "parallel.hpp"
#include "sip_lattice.hpp"
#include "sticky_bm.hpp"

namespace sipkit {

namespace {

constexpr uint64_t default_seed = 0x5eed2024ULL;

struct Context {
  const Config& cfg;
  uint64_t seed;
  unsigned threads;
  double tolerance;
  bool tolerance_given;
};

std::set<std::string> with_common(std::set<std::string> keys) {
  keys.insert({"command", "seed", "threads", "tolerance", "out"});
  return keys;
}

const std::set<std::string> kernel_keys = {"kernel", "kernel_file", "weights"};

std::set<std::string> operator+(std::set<std::string> a, const std::set<std::string>& b) {
  a.insert(b.begin(), b.end());
  return a;
}

FiniteRangeKernel kernel_from(const Config& cfg) {
  const int given = cfg.has("kernel") + cfg.has("kernel_file") + cfg.has("weights");
  if (given > 1) fail(ErrorCode::ConfigError, "give only one of kernel, kernel_file, weights");
  if (cfg.has("kernel_file")) return read_kernel_file(cfg.get_string("kernel_file", ""));
  if (cfg.has("weights")) return FiniteRangeKernel(cfg.get_doubles("weights", {}));
  const std::string name = cfg.get_string("kernel", "nn");
  try {
    return FiniteRangeKernel::preset(name);
  } catch (const Error&) {
    fail(ErrorCode::ConfigError, "unknown kernel preset '" + name + "'");
  }
}

int to_int(int64_t v, const char* key) {
  if (v < -(1LL << 30) || v > (1LL << 30)) fail(ErrorCode::ConfigError, std::string(key) + " out of range");
  return static_cast<int>(v);
}

std::string join_numbers(std::span<const double> xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ' ';
    out += format_number(xs[i]);
  }
  return out;
}

ResultTable make_table(const std::string& schema, std::vector<std::string> columns) {
  ResultTable t;
  t.schema = schema;
  t.columns = std::move(columns);
  return t;
}

StickyKernel sticky_from(const Config& cfg) {
  const double gamma = cfg.get_double("gamma", 1.0);
  const std::string convention = cfg.get_string("convention", "closed-form");
  StickyKernel k = StickyKernel::closed_form(1.0);
  if (cfg.has("theta")) {
    k = StickyKernel::from_weight(cfg.get_double("theta", 1.0));
  } else if (convention == "closed-form") {
    k = StickyKernel::closed_form(gamma);
  } else if (convention == "scaling-limit") {
    k = StickyKernel::scaling_limit(gamma);
  } else {
    fail(ErrorCode::ConfigError, "convention must be closed-form or scaling-limit");
  }
  if (cfg.has("diffusion_chi")) k = k.with_diffusion(cfg.get_double("diffusion_chi", 0.5));
  return k;
}

const std::set<std::string> sticky_keys = {"gamma", "convention", "theta", "diffusion_chi"};

TestFunction phi_from(const Config& cfg, double center) {
  return TestFunction::from_name(cfg.get_string("phi", "raised-cosine"), cfg.get_double("phi_center", center),
                                 cfg.get_double("phi_halfwidth", 1.0));
}

const std::set<std::string> phi_keys = {"phi", "phi_center", "phi_halfwidth"};

ResultTable kernel_info(const Context& c) {
  c.cfg.check_known(with_common(kernel_keys));
  const FiniteRangeKernel k = kernel_from(c.cfg);
  ResultTable t = make_table("kernel-info/1", {"range", "weights", "chi", "gcd", "status"});
  t.add_row({k.range(), join_numbers(k.positive_weights()), k.chi(), k.support_gcd(),
             to_string(validate(k.positive_weights()))});
  return t;
}

ResultTable simulate_sip(const Context& c) {
  c.cfg.check_known(with_common(kernel_keys + std::set<std::string>{"L", "k", "rho", "initial", "T", "replicas",
                                                                    "output"}));
  const SipParams params{c.cfg.get_double("k", 1.0), kernel_from(c.cfg), to_int(c.cfg.get_int("L", 64), "L")};
  params.validate();
  const double rho = c.cfg.get_double("rho", 1.0);
  const double T = c.cfg.get_double("T", 1.0);
  const std::string initial = c.cfg.get_string("initial", "poisson");
  const std::string output = c.cfg.get_string("output", "summary");
  const auto replicas = c.cfg.get_int("replicas", 1);
  if (initial != "poisson" && initial != "stationary")
    fail(ErrorCode::ConfigError, "initial must be poisson or stationary");
  if (output != "summary" && output != "sites") fail(ErrorCode::ConfigError, "output must be summary or sites");
  if (replicas < 1) fail(ErrorCode::ConfigError, "replicas must be >= 1");
  require(rho > 0.0 && T >= 0.0, "simulate-sip: need rho > 0 and T >= 0");

  struct Outcome {
    Configuration eta;
    uint64_t events;
  };
  std::vector<Outcome> out(static_cast<std::size_t>(replicas));
  parallel_for(out.size(), c.threads, [&](std::size_t j) {
    Rng rng = make_rng(replica_seed(c.seed, j));
    Configuration start = initial == "poisson" ? sample_poisson_product(rho, params.L, rng)
                                               : sample_stationary_product(rho, params.k, params.L, rng);
    SipSimulator sim(std::move(start), params);
    sim.run_until(T, rng);
    out[j] = {sim.state(), sim.events()};
  });

  if (output == "sites") {
    ResultTable t = make_table("simulate-sip-sites/1", {"replica", "site", "occupancy"});
    for (std::size_t j = 0; j < out.size(); ++j)
      for (int x = 0; x < params.L; ++x) t.add_row({static_cast<int64_t>(j), x, out[j].eta[x]});
    return t;
  }
  ResultTable t = make_table("simulate-sip-summary/1", {"replica", "total", "mean", "variance", "max", "events"});
  for (std::size_t j = 0; j < out.size(); ++j) {
    const auto& eta = out[j].eta;
    const double mean = static_cast<double>(eta.total()) / params.L;
    double var = 0.0;
    int64_t mx = 0;
    for (int x = 0; x < params.L; ++x) {
      var += (eta[x] - mean) * (eta[x] - mean);
      mx = std::max(mx, eta[x]);
    }
    t.add_row({static_cast<int64_t>(j), eta.total(), mean, var / params.L, mx, out[j].events});
  }
  return t;
}

ResultTable diff_prob(const Context& c) {
  c.cfg.check_known(with_common(kernel_keys + std::set<std::string>{"k", "N", "gamma", "t", "w0", "attraction"}));
  const FiniteRangeKernel kernel = kernel_from(c.cfg);
  const bool scaled = c.cfg.has("N") || c.cfg.has("gamma");
  if (scaled && c.cfg.has("k")) fail(ErrorCode::ConfigError, "give either k or (N, gamma)");
  const auto ts = c.cfg.get_doubles("t", {1.0});
  const auto w0s = c.cfg.get_ints("w0", {0});
  TransitionOptions opt;
  opt.tolerance = c.tolerance;

  struct Job {
    int64_t w0;
    double t;
  };
  std::vector<Job> jobs;
  for (double t : ts)
    for (int64_t w : w0s) jobs.push_back({w, t});
  std::vector<TransitionResult> res(jobs.size());

  double scale = 1.0;
  if (scaled) {
    const ScaledDiffParams sp{to_int(c.cfg.get_int("N", 50), "N"), c.cfg.get_double("gamma", 1.0), kernel};
    sp.validate();
    scale = 1.0 / sp.N;
    parallel_for(jobs.size(), c.threads,
                 [&](std::size_t i) { res[i] = scaled_transition(jobs[i].w0, jobs[i].t, sp, opt); });
  } else {
    const DiffChainParams p{c.cfg.get_double("k", 1.0), kernel, c.cfg.get_bool("attraction", true)};
    p.validate();
    parallel_for(jobs.size(), c.threads,
                 [&](std::size_t i) { res[i] = transition_prob(jobs[i].w0, p, jobs[i].t, opt); });
  }
  ResultTable t = make_table("diff-prob/1", {"w0", "v", "t", "p", "error_bound"});
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (c.tolerance_given && res[i].error_bound > c.tolerance)
      fail(ErrorCode::ToleranceError, "diff-prob: error bound " + format_number(res[i].error_bound) +
                                          " exceeds the tolerance");
    t.add_row({jobs[i].w0, static_cast<double>(jobs[i].w0) * scale, jobs[i].t, res[i].probability,
               res[i].error_bound});
  }
  return t;
}

ResultTable diff_sim(const Context& c) {
  c.cfg.check_known(with_common(kernel_keys +
                                std::set<std::string>{"k", "w0", "t", "replicas", "output", "attraction"}));
  const DiffChainParams p{c.cfg.get_double("k", 1.0), kernel_from(c.cfg), c.cfg.get_bool("attraction", true)};
  p.validate();
  const int64_t w0 = c.cfg.get_int("w0", 0);
  const double T = c.cfg.get_double("t", 1.0);
  const auto replicas = c.cfg.get_int("replicas", 1);
  const std::string output = c.cfg.get_string("output", "endpoints");
  if (replicas < 1) fail(ErrorCode::ConfigError, "replicas must be >= 1");
  if (output != "endpoints" && output != "path") fail(ErrorCode::ConfigError, "output must be endpoints or path");
  require(T >= 0.0, "diff-sim: t must be >= 0");

  std::vector<std::vector<std::pair<double, int64_t>>> paths(static_cast<std::size_t>(replicas));
  std::vector<int64_t> ends(paths.size());
  parallel_for(paths.size(), c.threads, [&](std::size_t j) {
    Rng rng = make_rng(replica_seed(c.seed, j));
    ends[j] = output == "path" ? simulate_path(w0, p, T, rng, paths[j]) : simulate_path(w0, p, T, rng);
  });
  if (output == "path") {
    ResultTable t = make_table("diff-sim-path/1", {"replica", "time", "w"});
    for (std::size_t j = 0; j < paths.size(); ++j)
      for (const auto& [time, w] : paths[j]) t.add_row({static_cast<int64_t>(j), time, w});
    return t;
  }
  ResultTable t = make_table("diff-sim/1", {"replica", "w0", "t", "w_t"});
  for (std::size_t j = 0; j < ends.size(); ++j) t.add_row({static_cast<int64_t>(j), w0, T, ends[j]});
  return t;
}

ResultTable sticky_kernel(const Context& c) {
  c.cfg.check_known(with_common(sticky_keys + std::set<std::string>{"t", "v"}));
  const StickyKernel k = sticky_from(c.cfg);
  const auto ts = c.cfg.get_doubles("t", {1.0});
  const auto vs = c.cfg.get_doubles("v", {0.0, 0.25, 0.5, 1.0, 2.0});
  ResultTable t = make_table("sticky-kernel/1", {"t", "v", "density", "atom", "hit_zero_prob"});
  for (double time : ts) {
    require(time > 0.0, "sticky-kernel: t must be positive");
    const double atom = k.mass_at_zero(time);
    for (double v : vs) t.add_row({time, v, k.density(v, time), atom, k.hit_zero_prob(v, time)});
  }
  t.set_meta("theta", format_number(k.theta()));
  t.set_meta("time_scale", format_number(k.time_scale()));
  return t;
}

ResultTable sticky_path(const Context& c) {
  c.cfg.check_known(with_common(sticky_keys + std::set<std::string>{"t_end", "dt", "eps_factor"}));
  const StickyKernel k = sticky_from(c.cfg);
  const double t_end = c.cfg.get_double("t_end", 1.0);
  const double dt = c.cfg.get_double("dt", 1e-4);
  const auto g = time_change_path(t_end, k.theta(), dt, c.seed, c.cfg.get_double("eps_factor", 1.0));
  ResultTable t = make_table("sticky-path/1", {"t", "X", "B", "L", "T"});
  for (std::size_t i = 0; i < g.X.size(); ++i)
    t.add_row({static_cast<double>(i) * dt, g.X[i], g.B[i], g.L[i], g.T[i]});
  t.set_meta("theta", format_number(k.theta()));
  t.set_meta("epsilon", format_number(g.epsilon));
  return t;
}

ResultTable variance(const Context& c) {
  c.cfg.check_known(with_common(kernel_keys + phi_keys +
                                std::set<std::string>{"gamma", "rho", "t", "N", "sigma_mode", "k", "limits"}));
  const FiniteRangeKernel kernel = kernel_from(c.cfg);
  const TestFunction phi = phi_from(c.cfg, 0.0);
  const double gamma = c.cfg.get_double("gamma", 1.0);
  const double rho = c.cfg.get_double("rho", 1.0);
  const auto ts = c.cfg.get_doubles("t", {0.1});
  const auto Ns = c.cfg.get_ints("N", {20, 40});
  const std::string mode = c.cfg.get_string("sigma_mode", "poisson");
  const double k = c.cfg.get_double("k", 1.0);
  if (mode != "poisson" && mode != "stationary") fail(ErrorCode::ConfigError, "sigma_mode must be poisson or stationary");

  using Limit = VarianceValue (*)(const TestFunction&, double, double, double);
  const std::map<std::string, Limit> limit_fns = {
      {"closed-form", &limit_variance}, {"alt", &limit_variance_alt}, {"chain", &limit_variance_chain}};
  std::vector<std::string> limits;
  {
    std::string list = c.cfg.get_string("limits", "closed-form,chain");
    std::string cur;
    for (char ch : list + ",") {
      if (ch == ',' || ch == ' ') {
        if (!cur.empty()) {
          if (!limit_fns.count(cur)) fail(ErrorCode::ConfigError, "unknown limit '" + cur + "'");
          limits.push_back(cur);
        }
        cur.clear();
      } else {
        cur += ch;
      }
    }
  }

  struct Job {
    std::string label;
    int N;  // 0 for a limit
    std::string limit;
    double t;
  };
  std::vector<Job> jobs;
  for (double t : ts) {
    for (int64_t N : Ns) jobs.push_back({std::to_string(N), to_int(N, "N"), "", t});
    for (const auto& l : limits) jobs.push_back({l == "closed-form" ? "limit" : "limit-" + l, 0, l, t});
  }
  TransitionOptions opt;
  opt.tolerance = c.tolerance;
  std::vector<VarianceValue> out(jobs.size());
  parallel_for(jobs.size(), c.threads, [&](std::size_t i) {
    const Job& j = jobs[i];
    if (j.N > 0) {
      const auto in = mode == "poisson" ? VarianceInputs::poisson(rho, gamma, j.t)
                                        : VarianceInputs::stationary(rho, k, gamma, j.t);
      out[i] = finite_variance(j.N, phi, in, kernel, opt);
    } else {
      out[i] = limit_fns.at(j.limit)(phi, rho, gamma, j.t);
    }
  });
  ResultTable t = make_table("variance/1", {"N", "t", "value", "error_estimate"});
  for (std::size_t i = 0; i < jobs.size(); ++i) t.add_row({jobs[i].label, jobs[i].t, out[i].value, out[i].error});
  return t;
}

ResultTable mosco(const Context& c) {
  c.cfg.check_known(with_common(kernel_keys + phi_keys + std::set<std::string>{"gamma", "N"}));
  const FiniteRangeKernel kernel = kernel_from(c.cfg);
  const TestFunction f = phi_from(c.cfg, 0.25);
  const double gamma = c.cfg.get_double("gamma", 1.0);
  std::vector<int> Ns;
  for (int64_t N : c.cfg.get_ints("N", {32, 64, 128, 256})) Ns.push_back(to_int(N, "N"));
  const MoscoSequence m = mosco2_sequence(f, Ns, gamma, kernel);

  // Dual form of the grid slope, which has mean zero for compact f.
  std::vector<double> dual(Ns.size());
  const TestFunction slope = f.slope();
  parallel_for(Ns.size(), c.threads, [&](std::size_t i) {
    const auto [lo, hi] = grid_window(slope, Ns[i], kernel.range());
    GridFunction g = phi_N(slope, Ns[i], lo, hi);
    const double mean = g.grid_mean() * Ns[i] / static_cast<double>(g.values.size());
    for (double& v : g.values) v -= mean;
    dual[i] = dual_form_rw(g, kernel).legendre;
  });

  ResultTable t = make_table("mosco/1", {"N", "E_N_psi", "E_N_phi", "R_N_phi", "dual_rw_slope", "norm_rw",
                                         "norm_sip", "psi_phi_gap"});
  for (std::size_t i = 0; i < m.rows.size(); ++i) {
    const auto& r = m.rows[i];
    t.add_row({r.N, r.E_psi, r.E_phi, r.R_phi, dual[i], r.norm_rw, r.norm_sip, r.psi_phi_gap});
  }
  const auto cont = continuum_forms(f, kernel.chi());
  t.set_meta("target_chi", format_number(m.target));
  t.set_meta("target_chi_half", format_number(m.half_target));
  t.set_meta("extrapolated", format_number(m.extrapolated));
  t.set_meta("order_from_differences", format_number(m.order_differences));
  t.set_meta("fitted_slope", format_number(m.slope));
  t.set_meta("continuum_bm", format_number(cont.bm));
  t.set_meta("continuum_sbm", format_number(cont.sbm));
  return t;
}

ResultTable duality(const Context& c) {
  c.cfg.check_known(with_common(kernel_keys + std::set<std::string>{"L", "k", "eta", "rho", "xi", "t", "replicas"}));
  const SipParams params{c.cfg.get_double("k", 1.0), kernel_from(c.cfg), to_int(c.cfg.get_int("L", 16), "L")};
  params.validate();
  Configuration eta;
  if (c.cfg.has("eta")) {
    if (c.cfg.has("rho")) fail(ErrorCode::ConfigError, "give either eta or rho");
    eta = Configuration(c.cfg.get_ints("eta", {}));
    if (eta.size() != params.L) fail(ErrorCode::ConfigError, "eta must list L occupancies");
  } else {
    eta = sample_poisson_product(c.cfg.get_double("rho", 1.0), params.L, splitmix64(c.seed));
  }
  const DualConfiguration xi{c.cfg.get_ints("xi", {0, 1})};
  const auto replicas = c.cfg.get_int("replicas", 10000);
  if (replicas < 1 || replicas > (1LL << 30)) fail(ErrorCode::ConfigError, "replicas out of range");
  const auto r = duality_check(xi, eta, params, c.cfg.get_double("t", 0.5), static_cast<int>(replicas), c.seed,
                               c.threads);
  ResultTable t = make_table("duality-check/1", {"side", "mean", "se"});
  t.add_row({"configuration", r.configuration_side.mean, r.configuration_side.se});
  t.add_row({"dual", r.dual_side.mean, r.dual_side.se});
  return t;
}

struct AcceptanceRun {
  ResultTable table;
  int failures;
};

AcceptanceRun acceptance(const Context& c) {
  c.cfg.check_known(with_common({"only", "gap_gamma_factor", "verbose"}));
  AcceptanceOptions o;
  for (int64_t n : c.cfg.get_ints("only", {})) o.only.insert(to_int(n, "only"));
  o.threads = c.threads;
  o.seed = c.seed;
  o.gap_gamma_factor = c.cfg.get_double("gap_gamma_factor", 1.0);
  if (c.cfg.get_bool("verbose", false))
    o.on_result = [](const CriterionResult& r) { std::fprintf(stderr, "%s\n", format_result(r).c_str()); };
  const AcceptanceReport rep = acceptance_suite(o);
  return {rep.table(), rep.failures()};
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::NonIrreducible:
    case ErrorCode::AllZero:
    case ErrorCode::ConfigError:
      return ExitConfig;
    case ErrorCode::WindowTooSmall:
    case ErrorCode::QuadratureNotConverged:
    case ErrorCode::RejectionStall:
    case ErrorCode::SingularSystem:
    case ErrorCode::ToleranceError:
      return ExitTolerance;
    case ErrorCode::IoError:
      return ExitInternal;
  }
  return ExitInternal;
}

const char* const names[] = {"kernel-info", "simulate-sip", "diff-prob", "diff-sim", "sticky-kernel",
                             "sticky-path", "variance",     "mosco",     "duality-check", "acceptance",
                             nullptr};

}  // namespace

const char* const* command_names() { return names; }

RunOutcome run(const Config& config) {
  RunOutcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    const std::string command = config.get_string("command", "");
    Context c{config, config.get_u64("seed", default_seed),
              resolve_threads(static_cast<unsigned>(std::max<int64_t>(0, config.get_int("threads", 0)))),
              config.get_double("tolerance", 1e-10), config.has("tolerance")};
    if (!(c.tolerance > 0.0)) fail(ErrorCode::ConfigError, "tolerance must be positive");

    int failures = 0;
    if (command == "kernel-info") out.table = kernel_info(c);
    else if (command == "simulate-sip") out.table = simulate_sip(c);
    else if (command == "diff-prob") out.table = diff_prob(c);
    else if (command == "diff-sim") out.table = diff_sim(c);
    else if (command == "sticky-kernel") out.table = sticky_kernel(c);
    else if (command == "sticky-path") out.table = sticky_path(c);
    else if (command == "variance") out.table = variance(c);
    else if (command == "mosco") out.table = mosco(c);
    else if (command == "duality-check") out.table = duality(c);
    else if (command == "acceptance") {
      auto a = acceptance(c);
      out.table = std::move(a.table);
      failures = a.failures;
    } else {
      fail(ErrorCode::ConfigError, command.empty() ? "no command given" : "unknown command '" + command + "'");
    }

    char hash[24];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config.hash()));
    out.table.set_meta("command", command);
    out.table.set_meta("code_version", SIPKIT_VERSION);
    out.table.set_meta("config_hash", hash);
    out.table.set_meta("seed", std::to_string(c.seed));
    out.table.set_meta("threads", std::to_string(c.threads));
    out.table.set_meta("wall_time_s",
                       format_number(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()));
    if (config.has("out")) write_text_file(config.get_string("out", ""), out.table.to_csv());
    if (failures > 0) {
      out.exit_code = ExitAcceptance;
      out.message = std::to_string(failures) + " acceptance criteria failed";
    }
  } catch (const Error& e) {
    out.exit_code = exit_code_for(e.code());
    out.message = std::string(to_string(e.code())) + ": " + e.what();
  } catch (const std::exception& e) {
    out.exit_code = ExitInternal;
    out.message = e.what();
  }
  return out;
}

}  // namespace sipkit
