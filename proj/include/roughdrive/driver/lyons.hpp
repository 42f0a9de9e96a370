#pragma once

#include <vector>

#include "roughdrive/driver/bounded_driver.hpp"

namespace rd {

// Level maps A^n of the series solution, built recursively from
//   delta A^n_{tus} = sum_{k=1}^{n-1} A^{n-k}_{tu} A^k_{us},
// by compensated dyadic refinement inside each grid cell (depth `levels`,
// exact two-level data at the leaves) and exact Chen composition across
// cells. e^A = Id + sum_n A^n truncated at n_max.
struct LyonsSeries {
  TimeGrid grid;
  int n_max = 0;
  std::vector<TwoIndexMap<Eigen::MatrixXd>> levels;  // levels[i] is A^{i+1}
  TwoIndexMap<Eigen::MatrixXd> exp_map;              // e^A, dense
  std::vector<double> level_norms;  // Hölder norm of A^n at exponent n*gamma
  double truncation_error = 0.0;    // norm of the last retained level
};

// rebuild_level2 replaces the exact A^2 leaves by zero so the dyadic
// construction re-creates the second level; used to cross-check the
// driver's area against the series recursion (smooth drivers only).
LyonsSeries lyons_series(const BoundedDriver& d, int n_max = 8, int levels = 10,
                         bool rebuild_level2 = false);

// max over sampled node triples of |eA_{ts} - eA_{tu} eA_{us}|_F
double flow_defect(const TwoIndexMap<Eigen::MatrixXd>& exp_map,
                   std::size_t exhaustive_cap = 64,
                   std::size_t sample_count = 4000);

}  // namespace rd
