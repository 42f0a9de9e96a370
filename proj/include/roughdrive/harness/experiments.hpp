#pragma once

#include "roughdrive/harness/report.hpp"

namespace rd {

// Deterministic execution of one declarative experiment; every computed
// norm, slope and defect lands in the report together with its pass/fail
// threshold.
Report run_experiment(const ExperimentConfig& cfg);

}  // namespace rd
