#pragma once

#include <string>
#include <vector>

#include "gaugecmp/config.hpp"

namespace gaugecmp {

struct ScenarioOutput {
  std::string text;  // CSV, or the plain-text report for gauge-audit
  int failed_rows = 0;
  bool audit_failed = false;
  bool numerical_failure() const { return failed_rows > 0 || audit_failed; }
};

// Column names of the CSV written for the given configuration.
std::vector<std::string> csv_columns(const RunConfig& cfg);

// Rows are computed on cfg.workers threads and written back in grid order.
ScenarioOutput run_scenario(const RunConfig& cfg);

}  // namespace gaugecmp
