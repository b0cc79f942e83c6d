#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "sipkit/sipkit.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

int main(void) {
  sipkit_kernel* nn = NULL;
  EXPECT(sipkit_kernel_preset("nn", &nn) == SIPKIT_OK);
  EXPECT(sipkit_kernel_chi(nn) == 0.5);
  EXPECT(sipkit_kernel_range(nn) == 1);

  sipkit_kernel* bad = NULL;
  const double zero[] = {0.0, 0.0};
  EXPECT(sipkit_kernel_create(zero, 2, &bad) == SIPKIT_ALL_ZERO);
  EXPECT(bad == NULL);
  EXPECT(strlen(sipkit_last_error()) > 0);
  const double gapped[] = {0.0, 1.0};
  EXPECT(sipkit_kernel_create(gapped, 2, &bad) == SIPKIT_NON_IRREDUCIBLE);
  EXPECT(sipkit_kernel_load("/nonexistent/kernel.txt", &bad) != SIPKIT_OK);
  EXPECT(sipkit_kernel_preset("nope", &bad) != SIPKIT_OK);

  double p = 0.0, err = 1.0;
  EXPECT(sipkit_diff_transition(nn, 1.0, 0, 1.0, 1e-12, &p, &err) == SIPKIT_OK);
  EXPECT(fabs(p - 0.42586188314836165) < 1e-10);
  EXPECT(err <= 1e-10);
  EXPECT(sipkit_diff_transition(nn, -1.0, 0, 1.0, 1e-12, &p, &err) == SIPKIT_INVALID_ARGUMENT);
  EXPECT(sipkit_diff_transition(NULL, 1.0, 0, 1.0, 1e-12, &p, &err) == SIPKIT_INVALID_ARGUMENT);
  EXPECT(sipkit_scaled_transition(nn, 10, 1.0, 0, 0.5, 1e-12, &p, &err) == SIPKIT_OK);
  EXPECT(fabs(p - 0.526711968919422) < 1e-9);

  double atom = 0.0, dens = 0.0, hit = 0.0;
  EXPECT(sipkit_sticky_eval(sqrt(2.0), 0.0, 0.5, &atom, NULL, NULL) == SIPKIT_OK);
  EXPECT(fabs(atom - exp(0.5) * erfc(sqrt(0.5))) < 1e-12);
  EXPECT(sipkit_sticky_eval(1.0, 0.3, 1.0, NULL, &dens, &hit) == SIPKIT_OK);
  EXPECT(dens > 0.0 && hit > 0.0 && hit < 1.0);
  EXPECT(sipkit_sticky_eval(1.0, 0.3, -1.0, &atom, NULL, NULL) == SIPKIT_INVALID_ARGUMENT);

  double d = 0.0;
  EXPECT(sipkit_duality_single(2, 3, 1.0, &d) == SIPKIT_OK);
  EXPECT(fabs(d - 3.0) < 1e-14);
  EXPECT(sipkit_potential_kernel(nn, 0, &d) == SIPKIT_OK);
  EXPECT(d == 0.0);

  double v = 0.0, ve = 0.0;
  EXPECT(sipkit_limit_variance("raised-cosine", 0.0, 1.0, 1.0, 1.0, 0.5, &v, &ve) == SIPKIT_OK);
  EXPECT(fabs(v - 0.3756727894760827) < 1e-7);
  EXPECT(sipkit_limit_variance("unknown", 0.0, 1.0, 1.0, 1.0, 0.5, &v, &ve) != SIPKIT_OK);

  sipkit_config* cfg = NULL;
  EXPECT(sipkit_config_parse("command = kernel-info\nkernel = nn\n", &cfg) == SIPKIT_OK);
  char* csv = NULL;
  int code = -1;
  EXPECT(sipkit_run(cfg, &csv, &code) == SIPKIT_OK);
  EXPECT(code == 0);
  EXPECT(csv != NULL && strstr(csv, "# command: kernel-info") != NULL);
  sipkit_free_string(csv);

  EXPECT(sipkit_config_set(cfg, "kernel", "bogus") == SIPKIT_OK);
  csv = NULL;
  EXPECT(sipkit_run(cfg, &csv, &code) == SIPKIT_OK);
  EXPECT(code == 2);
  sipkit_free_string(csv);
  sipkit_config_destroy(cfg);

  EXPECT(sipkit_config_parse("broken line", &cfg) == SIPKIT_CONFIG_ERROR);
  EXPECT(strcmp(sipkit_status_name(SIPKIT_OK), "") != 0);
  EXPECT(strlen(sipkit_version()) > 0);

  sipkit_kernel_destroy(nn);
  if (failures) fprintf(stderr, "%d checks failed\n", failures);
  return failures ? 1 : 0;
}
