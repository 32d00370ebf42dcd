#pragma once

#include <string>

#include "ebvp/config.hpp"
#include "ebvp/report.hpp"

namespace ebvp {

struct ExperimentResult {
  RunReport report;
  int exit_code = 0;  // 0 all-pass, 1 any FAIL or UNRELIABLE, 2 config error
};

// Dispatches a validated config to the module operation for its kind and
// collects verdicts with numeric witnesses.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Structural check of an emitted JSON report (the shape documented in
// docs/report.schema.json); throws std::runtime_error on violation.
void validate_report_json(const std::string& json_text);

}  // namespace ebvp
