// Command-line front end; talks to the library only through the C API.
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sipkit/sipkit.h"

namespace {

const char* commands[] = {"kernel-info", "simulate-sip", "diff-prob", "diff-sim", "sticky-kernel",
                          "sticky-path", "variance", "mosco", "duality-check", "acceptance"};

// Extra `--key value` / `--key=value` arguments become config keys with
// dashes mapped to underscores.
bool collect_extras(const std::vector<std::string>& extras, std::map<std::string, std::string>& out) {
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string& a = extras[i];
    if (a.rfind("--", 0) != 0 || a.size() < 3) {
      std::fprintf(stderr, "sipkit: unexpected argument '%s'\n", a.c_str());
      return false;
    }
    std::string key = a.substr(2), value;
    if (const auto eq = key.find('='); eq != std::string::npos) {
      value = key.substr(eq + 1);
      key.erase(eq);
    } else if (i + 1 < extras.size()) {
      value = extras[++i];
    } else {
      std::fprintf(stderr, "sipkit: missing value for '%s'\n", a.c_str());
      return false;
    }
    for (char& c : key)
      if (c == '-') c = '_';
    out[key] = value;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inclusion-process toolkit"};
  app.allow_extras();
  app.set_version_flag("--version", std::string(sipkit_version()));

  std::string command, config_path, out_path, seed, threads, tolerance;
  app.add_option("command", command, "Subcommand")
      ->required()
      ->check(CLI::IsMember(std::vector<std::string>(std::begin(commands), std::end(commands))));
  app.add_option("--config", config_path, "key = value file; flags override it");
  app.add_option("--seed", seed, "64-bit seed (decimal or 0x hex)");
  app.add_option("--out", out_path, "CSV output path (default: stdout)");
  app.add_option("--threads", threads, "Worker threads")->envname("SIPKIT_THREADS");
  app.add_option("--tolerance", tolerance, "Numerical tolerance");
  app.footer("Other parameters are passed as --key value, e.g. --gamma 1 --t 0.1,1.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  std::map<std::string, std::string> extras;
  if (!collect_extras(app.remaining(), extras)) return 2;

  sipkit_config* cfg = nullptr;
  const sipkit_status s =
      config_path.empty() ? sipkit_config_create(&cfg) : sipkit_config_load(config_path.c_str(), &cfg);
  if (s != SIPKIT_OK) {
    std::fprintf(stderr, "sipkit: %s: %s\n", sipkit_status_name(s), sipkit_last_error());
    return 2;
  }
  std::map<std::string, std::string> flags = extras;
  flags["command"] = command;
  if (!seed.empty()) flags["seed"] = seed;
  if (!out_path.empty()) flags["out"] = out_path;
  if (!threads.empty()) flags["threads"] = threads;
  if (!tolerance.empty()) flags["tolerance"] = tolerance;
  for (const auto& [k, v] : flags) {
    if (sipkit_config_set(cfg, k.c_str(), v.c_str()) != SIPKIT_OK) {
      std::fprintf(stderr, "sipkit: %s\n", sipkit_last_error());
      sipkit_config_destroy(cfg);
      return 2;
    }
  }

  char* csv = nullptr;
  int exit_code = 1;
  const sipkit_status rs = sipkit_run(cfg, &csv, &exit_code);
  sipkit_config_destroy(cfg);
  if (rs != SIPKIT_OK) {
    std::fprintf(stderr, "sipkit: %s\n", sipkit_last_error());
    return 1;
  }
  if (csv && out_path.empty()) std::fputs(csv, stdout);
  sipkit_free_string(csv);
  if (exit_code != 0) std::fprintf(stderr, "sipkit: %s\n", sipkit_last_error());
  return exit_code;
}
