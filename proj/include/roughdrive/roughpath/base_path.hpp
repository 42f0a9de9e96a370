#pragma once

#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "roughdrive/core/time_grid.hpp"

namespace rd {

// Sampled base path in R^ell, piecewise-linear between nodes.
struct BasePath {
  TimeGrid grid;
  std::vector<Eigen::VectorXd> samples;

  int dim() const { return samples.empty() ? 0 : static_cast<int>(samples[0].size()); }

  // PL interpolation; t must lie in [0, T].
  Eigen::VectorXd at_time(double t) const;
  // Index of the segment containing t (last segment for t = T).
  std::size_t segment_of(double t) const;
};

BasePath make_base_path(TimeGrid grid, std::vector<Eigen::VectorXd> samples);

// CSV with header "t,x1,...,x<l>"; decimal formatting round-trips doubles.
void write_base_path_csv(const BasePath& p, std::ostream& os);
BasePath read_base_path_csv(std::istream& is);

}  // namespace rd
