#ifndef SIPKIT_H
#define SIPKIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(SIPKIT_BUILDING)
#define SIPKIT_API __attribute__((visibility("default")))
#else
#define SIPKIT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sipkit_status {
  SIPKIT_OK = 0,
  SIPKIT_INVALID_ARGUMENT = 1,
  SIPKIT_NON_IRREDUCIBLE = 2,
  SIPKIT_ALL_ZERO = 3,
  SIPKIT_WINDOW_TOO_SMALL = 4,
  SIPKIT_QUADRATURE_NOT_CONVERGED = 5,
  SIPKIT_REJECTION_STALL = 6,
  SIPKIT_SINGULAR_SYSTEM = 7,
  SIPKIT_CONFIG_ERROR = 8,
  SIPKIT_TOLERANCE_ERROR = 9,
  SIPKIT_IO_ERROR = 10,
  SIPKIT_INTERNAL = 11
} sipkit_status;

typedef struct sipkit_kernel sipkit_kernel;
typedef struct sipkit_config sipkit_config;

/* Message of the last failed call on this thread; never NULL. */
SIPKIT_API const char* sipkit_last_error(void);
SIPKIT_API const char* sipkit_version(void);
SIPKIT_API const char* sipkit_status_name(sipkit_status s);

/* Kernels: positive half p(1..R) of a symmetric jump law. */
SIPKIT_API sipkit_status sipkit_kernel_create(const double* weights, size_t range, sipkit_kernel** out);
/* "nn" or "range2". */
SIPKIT_API sipkit_status sipkit_kernel_preset(const char* name, sipkit_kernel** out);
SIPKIT_API sipkit_status sipkit_kernel_load(const char* path, sipkit_kernel** out);
SIPKIT_API void sipkit_kernel_destroy(sipkit_kernel* k);
SIPKIT_API double sipkit_kernel_chi(const sipkit_kernel* k);
SIPKIT_API int sipkit_kernel_range(const sipkit_kernel* k);

/* P(w_t = 0 | w_0 = w0) for the difference chain with parameter k. */
SIPKIT_API sipkit_status sipkit_diff_transition(const sipkit_kernel* kernel, double k, int64_t w0, double t,
                                                double tolerance, double* probability, double* error_bound);
/* Same for the condensively scaled chain (k_N = 1/(sqrt2 gamma N), time
   gamma N^3 t / sqrt2), started from the integer state w. */
SIPKIT_API sipkit_status sipkit_scaled_transition(const sipkit_kernel* kernel, int N, double gamma, int64_t w,
                                                  double t, double tolerance, double* probability,
                                                  double* error_bound);

/* Sticky Brownian motion with weight theta at the origin: atom, density at
   v and P_v(X_t = 0). Any output pointer may be NULL. */
SIPKIT_API sipkit_status sipkit_sticky_eval(double theta, double v, double t, double* atom, double* density,
                                            double* hit_zero);

SIPKIT_API sipkit_status sipkit_duality_single(int64_t m, int64_t n, double k, double* out);
SIPKIT_API sipkit_status sipkit_potential_kernel(const sipkit_kernel* kernel, int64_t n, double* out);

/* Closed-form limit variance for a named test function
   ("raised-cosine", "poly-bump"). */
SIPKIT_API sipkit_status sipkit_limit_variance(const char* phi, double center, double halfwidth, double rho,
                                               double gamma, double t, double* value, double* error);

/* Configurations: `key = value` text with overrides. */
SIPKIT_API sipkit_status sipkit_config_create(sipkit_config** out);
SIPKIT_API sipkit_status sipkit_config_load(const char* path, sipkit_config** out);
SIPKIT_API sipkit_status sipkit_config_parse(const char* text, sipkit_config** out);
SIPKIT_API sipkit_status sipkit_config_set(sipkit_config* cfg, const char* key, const char* value);
SIPKIT_API void sipkit_config_destroy(sipkit_config* cfg);

/* Runs the subcommand named by the `command` key. The CSV text is returned
   in *csv (release with sipkit_free_string; may be NULL on failure) and the
   process exit code in *exit_code (0 ok, 1 internal, 2 config, 3 tolerance,
   4 acceptance failures). Returns SIPKIT_OK whenever the run took place. */
SIPKIT_API sipkit_status sipkit_run(const sipkit_config* cfg, char** csv, int* exit_code);

/* Runs the acceptance suite and prints one verdict line per criterion to
   stdout as results arrive. `only` lists criterion numbers (NULL or 0 for
   all). *failures counts failed non-informational criteria. */
SIPKIT_API sipkit_status sipkit_run_acceptance(const int* only, size_t n_only, unsigned threads, uint64_t seed,
                                               const char* csv_path, int* failures);

SIPKIT_API void sipkit_free_string(char* s);

#ifdef __cplusplus
}
#endif

#endif
