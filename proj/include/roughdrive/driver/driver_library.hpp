#pragma once

#include <string>
#include <vector>

#include "roughdrive/driver/bounded_driver.hpp"

namespace rd {

// Shipped matrix drivers used by the experiment suites:
//   scalar      N=1, smooth lift of x(t) = t, v = 0.8
//   nilpotent   N=2, v = [[0,1],[0,0]] (v^2 = 0), smooth lift
//   smooth2x2   N=2, two-component smooth base path, fixed 2x2 matrices
//   brownian2x2 N=2, Brownian PL lift (gamma = 0.4, seed 42)
const BoundedDriver& driver_library(const std::string& id);
std::vector<std::string> driver_library_ids();

// Matrices and lift behind "smooth2x2" (the order/reference tests need
// the raw pieces).
const std::vector<Eigen::MatrixXd>& smooth2x2_matrices();
const Level2RoughPath& smooth2x2_lift();

}  // namespace rd
