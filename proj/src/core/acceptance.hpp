#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "result_table.hpp"

namespace sipkit {

struct CriterionResult {
  std::string id;     // "1".."13"; supplementary checks carry a suffix ("5c")
  std::string title;
  bool informational = false;
  bool pass = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  /// Criterion numbers to run; empty runs all.
  std::set<int> only;
  unsigned threads = 0;
  uint64_t seed = 0x5eed2024ULL;
  /// Multiplies gamma in the closed-form gap of the form-domination check.
  /// Test fixtures set it away from 1 to force a failure.
  double gap_gamma_factor = 1.0;
  /// Called after each result, e.g. to print progress.
  std::function<void(const CriterionResult&)> on_result;
};

struct AcceptanceReport {
  std::vector<CriterionResult> results;

  /// Failed criteria, informational lines excluded.
  int failures() const;
  ResultTable table() const;
};

AcceptanceReport acceptance_suite(const AcceptanceOptions& options = {});

/// One human-readable verdict line.
std::string format_result(const CriterionResult& r);

}  // namespace sipkit
