#pragma once

#include <string>

#include "config.hpp"
#include "result_table.hpp"

namespace sipkit {

/// Process exit codes of the harness.
enum ExitCode : int {
  ExitOk = 0,
  ExitInternal = 1,   // I/O or unexpected failure
  ExitConfig = 2,     // bad configuration or invalid input
  ExitTolerance = 3,  // a computation could not meet its tolerance
  ExitAcceptance = 4, // acceptance criteria failed
};

struct RunOutcome {
  ResultTable table;
  int exit_code = ExitOk;
  std::string message;  // error text when exit_code != 0
};

/// Dispatches on the `command` key. Common keys: seed, threads, tolerance,
/// out (CSV path; written when present). Never throws.
RunOutcome run(const Config& config);

/// Subcommand names in dispatch order.
const char* const* command_names();

}  // namespace sipkit
