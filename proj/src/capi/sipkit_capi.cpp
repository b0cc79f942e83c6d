#include "sipkit/sipkit.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

#include "acceptance.hpp"
#include "config.hpp"
#include "difference_chain.hpp"
#include "dirichlet_forms.hpp"
#include "error.hpp"
#include "experiments.hpp"
#include "fluctuation_field.hpp"
#include "kernel.hpp"
#include "sip_lattice.hpp"
#include "sticky_bm.hpp"

struct sipkit_kernel {
  sipkit::FiniteRangeKernel kernel;
};

struct sipkit_config {
  sipkit::Config config;
};

namespace {

thread_local std::string last_error;

sipkit_status status_of(sipkit::ErrorCode code) {
  using sipkit::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return SIPKIT_INVALID_ARGUMENT;
    case ErrorCode::NonIrreducible: return SIPKIT_NON_IRREDUCIBLE;
    case ErrorCode::AllZero: return SIPKIT_ALL_ZERO;
    case ErrorCode::WindowTooSmall: return SIPKIT_WINDOW_TOO_SMALL;
    case ErrorCode::QuadratureNotConverged: return SIPKIT_QUADRATURE_NOT_CONVERGED;
    case ErrorCode::RejectionStall: return SIPKIT_REJECTION_STALL;
    case ErrorCode::SingularSystem: return SIPKIT_SINGULAR_SYSTEM;
    case ErrorCode::ConfigError: return SIPKIT_CONFIG_ERROR;
    case ErrorCode::ToleranceError: return SIPKIT_TOLERANCE_ERROR;
    case ErrorCode::IoError: return SIPKIT_IO_ERROR;
  }
  return SIPKIT_INTERNAL;
}

// Runs body, translating exceptions into status codes.
template <class Body>
sipkit_status guard(Body&& body) {
  try {
    body();
    last_error.clear();
    return SIPKIT_OK;
  } catch (const sipkit::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    last_error = e.what();
    return SIPKIT_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return SIPKIT_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) sipkit::fail(sipkit::ErrorCode::InvalidArgument, std::string(what) + " is NULL");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* sipkit_last_error(void) { return last_error.c_str(); }

const char* sipkit_version(void) { return SIPKIT_VERSION; }

const char* sipkit_status_name(sipkit_status s) {
  switch (s) {
    case SIPKIT_OK: return "ok";
    case SIPKIT_INVALID_ARGUMENT: return "InvalidArgument";
    case SIPKIT_NON_IRREDUCIBLE: return "NonIrreducible";
    case SIPKIT_ALL_ZERO: return "AllZero";
    case SIPKIT_WINDOW_TOO_SMALL: return "WindowTooSmall";
    case SIPKIT_QUADRATURE_NOT_CONVERGED: return "QuadratureNotConverged";
    case SIPKIT_REJECTION_STALL: return "RejectionStall";
    case SIPKIT_SINGULAR_SYSTEM: return "SingularSystem";
    case SIPKIT_CONFIG_ERROR: return "ConfigError";
    case SIPKIT_TOLERANCE_ERROR: return "ToleranceError";
    case SIPKIT_IO_ERROR: return "IoError";
    case SIPKIT_INTERNAL: return "Internal";
  }
  return "unknown";
}

sipkit_status sipkit_kernel_create(const double* weights, size_t range, sipkit_kernel** out) {
  return guard([&] {
    need(out, "out");
    *out = nullptr;
    if (range > 0) need(weights, "weights");
    *out = new sipkit_kernel{sipkit::FiniteRangeKernel(std::vector<double>(weights, weights + range))};
  });
}

sipkit_status sipkit_kernel_preset(const char* name, sipkit_kernel** out) {
  return guard([&] {
    need(out, "out");
    *out = nullptr;
    need(name, "name");
    *out = new sipkit_kernel{sipkit::FiniteRangeKernel::preset(name)};
  });
}

sipkit_status sipkit_kernel_load(const char* path, sipkit_kernel** out) {
  return guard([&] {
    need(out, "out");
    *out = nullptr;
    need(path, "path");
    *out = new sipkit_kernel{sipkit::read_kernel_file(path)};
  });
}

void sipkit_kernel_destroy(sipkit_kernel* k) { delete k; }

double sipkit_kernel_chi(const sipkit_kernel* k) { return k ? k->kernel.chi() : 0.0; }

int sipkit_kernel_range(const sipkit_kernel* k) { return k ? k->kernel.range() : 0; }

sipkit_status sipkit_diff_transition(const sipkit_kernel* kernel, double k, int64_t w0, double t,
                                     double tolerance, double* probability, double* error_bound) {
  return guard([&] {
    need(kernel, "kernel");
    need(probability, "probability");
    sipkit::TransitionOptions opt;
    if (tolerance > 0.0) opt.tolerance = tolerance;
    const auto r = sipkit::transition_prob(w0, sipkit::DiffChainParams{k, kernel->kernel}, t, opt);
    *probability = r.probability;
    if (error_bound) *error_bound = r.error_bound;
  });
}

sipkit_status sipkit_scaled_transition(const sipkit_kernel* kernel, int N, double gamma, int64_t w, double t,
                                       double tolerance, double* probability, double* error_bound) {
  return guard([&] {
    need(kernel, "kernel");
    need(probability, "probability");
    sipkit::TransitionOptions opt;
    if (tolerance > 0.0) opt.tolerance = tolerance;
    const auto r = sipkit::scaled_transition(w, t, sipkit::ScaledDiffParams{N, gamma, kernel->kernel}, opt);
    *probability = r.probability;
    if (error_bound) *error_bound = r.error_bound;
  });
}

sipkit_status sipkit_sticky_eval(double theta, double v, double t, double* atom, double* density,
                                 double* hit_zero) {
  return guard([&] {
    const auto k = sipkit::StickyKernel::from_weight(theta);
    if (atom) *atom = k.mass_at_zero(t);
    if (density) *density = k.density(v, t);
    if (hit_zero) *hit_zero = k.hit_zero_prob(v, t);
  });
}

sipkit_status sipkit_duality_single(int64_t m, int64_t n, double k, double* out) {
  return guard([&] {
    need(out, "out");
    *out = sipkit::duality_single(m, n, k);
  });
}

sipkit_status sipkit_potential_kernel(const sipkit_kernel* kernel, int64_t n, double* out) {
  return guard([&] {
    need(kernel, "kernel");
    need(out, "out");
    *out = sipkit::potential_kernel(n, kernel->kernel);
  });
}

sipkit_status sipkit_limit_variance(const char* phi, double center, double halfwidth, double rho, double gamma,
                                    double t, double* value, double* error) {
  return guard([&] {
    need(phi, "phi");
    need(value, "value");
    const auto r = sipkit::limit_variance(sipkit::TestFunction::from_name(phi, center, halfwidth), rho, gamma, t);
    *value = r.value;
    if (error) *error = r.error;
  });
}

sipkit_status sipkit_config_create(sipkit_config** out) {
  return guard([&] {
    need(out, "out");
    *out = new sipkit_config{};
  });
}

sipkit_status sipkit_config_load(const char* path, sipkit_config** out) {
  return guard([&] {
    need(out, "out");
    *out = nullptr;
    need(path, "path");
    *out = new sipkit_config{sipkit::Config::from_file(path)};
  });
}

sipkit_status sipkit_config_parse(const char* text, sipkit_config** out) {
  return guard([&] {
    need(out, "out");
    *out = nullptr;
    need(text, "text");
    *out = new sipkit_config{sipkit::Config::parse(text)};
  });
}

sipkit_status sipkit_config_set(sipkit_config* cfg, const char* key, const char* value) {
  return guard([&] {
    need(cfg, "cfg");
    need(key, "key");
    need(value, "value");
    if (!*key) sipkit::fail(sipkit::ErrorCode::ConfigError, "empty config key");
    cfg->config.set(key, value);
  });
}

void sipkit_config_destroy(sipkit_config* cfg) { delete cfg; }

sipkit_status sipkit_run(const sipkit_config* cfg, char** csv, int* exit_code) {
  std::string message;
  const sipkit_status s = guard([&] {
    need(cfg, "cfg");
    need(exit_code, "exit_code");
    if (csv) *csv = nullptr;
    const auto outcome = sipkit::run(cfg->config);
    *exit_code = outcome.exit_code;
    message = outcome.message;
    const bool produced = outcome.exit_code == sipkit::ExitOk || outcome.exit_code == sipkit::ExitAcceptance;
    if (csv && produced) *csv = dup(outcome.table.to_csv());
  });
  // The run's own message outlives the success path of guard().
  if (s == SIPKIT_OK) last_error = message;
  return s;
}

sipkit_status sipkit_run_acceptance(const int* only, size_t n_only, unsigned threads, uint64_t seed,
                                    const char* csv_path, int* failures) {
  return guard([&] {
    need(failures, "failures");
    sipkit::AcceptanceOptions o;
    for (size_t i = 0; i < n_only; ++i) o.only.insert(only[i]);
    o.threads = threads;
    if (seed != 0) o.seed = seed;
    o.on_result = [](const sipkit::CriterionResult& r) {
      std::printf("%s\n", sipkit::format_result(r).c_str());
      std::fflush(stdout);
    };
    const auto report = sipkit::acceptance_suite(o);
    *failures = report.failures();
    if (csv_path) sipkit::write_text_file(csv_path, report.table().to_csv());
  });
}

void sipkit_free_string(char* s) { std::free(s); }

}  // extern "C"
