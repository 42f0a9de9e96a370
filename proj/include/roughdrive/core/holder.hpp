#pragma once

#include <vector>

#include "roughdrive/core/multi_index.hpp"

namespace rd {

// Log-log fit of dyadic-scale sups of a real 2-index map:
//   S(h_m) = max { |a_{ts}| : t - s in [h_m, 2 h_m) },  h_m = T 2^{-m},
// slope of log S against log h over the scales whose sup exceeds the
// noise floor.
struct HolderReport {
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<int> scales_used;
  std::vector<double> per_scale_sup;
};

HolderReport estimate_holder_exponent(const TwoIndexMap<double>& a, int m_min,
                                      int m_max, double floor = 1e-13);

// Least-squares slope/intercept of y against x.
std::pair<double, double> linear_fit(const std::vector<double>& x,
                                     const std::vector<double>& y);

}  // namespace rd
