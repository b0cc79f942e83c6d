// Runs every acceptance criterion and prints one verdict line per criterion.
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sipkit/sipkit.h"

int main(int argc, char** argv) {
  CLI::App app{"Acceptance suite"};
  std::vector<int> only;
  unsigned threads = 0;
  uint64_t seed = 0;
  std::string out;
  app.add_option("--only", only, "Criterion numbers to run")->delimiter(',');
  app.add_option("--threads", threads, "Worker threads")->envname("SIPKIT_THREADS");
  app.add_option("--seed", seed, "Seed (0 keeps the default)");
  app.add_option("--out", out, "CSV report path");
  CLI11_PARSE(app, argc, argv);

  int failures = 0;
  const sipkit_status s = sipkit_run_acceptance(only.data(), only.size(), threads, seed,
                                                out.empty() ? nullptr : out.c_str(), &failures);
  if (s != SIPKIT_OK) {
    std::fprintf(stderr, "sipkit_acceptance: %s\n", sipkit_last_error());
    return 1;
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 4;
}
