#pragma once

#include "roughdrive/harness/report.hpp"

namespace rd {

// One acceptance criterion: a named bundle of threshold checks.
struct CriterionResult {
  int id = 0;
  std::string name;
  std::vector<Check> checks;
  double seconds = 0.0;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// id -> suite name, in execution order
const std::vector<std::pair<int, std::string>>& acceptance_names();

// Runs the requested criteria (all when empty). Criteria sharing transport
// solutions reuse them within one call.
std::vector<CriterionResult> run_acceptance(std::vector<int> ids = {});

}  // namespace rd
