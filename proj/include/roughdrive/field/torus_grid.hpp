#pragma once

#include <functional>
#include <iosfwd>
#include <numbers>
#include <vector>

#include "roughdrive/errors.hpp"

namespace rd {

// Uniform grid on the periodic torus [0, 2pi)^d, d in {1, 2}, with a
// power-of-two number of points per axis (8 <= n <= 256).
struct TorusGrid {
  int dim = 1;
  int n = 8;

  TorusGrid() = default;
  TorusGrid(int d, int points_per_axis);

  std::size_t points() const {
    return dim == 1 ? static_cast<std::size_t>(n)
                    : static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  }
  double coord(int i) const {
    return 2.0 * std::numbers::pi * static_cast<double>(i) / n;
  }
  double cell_volume() const {
    const double h = 2.0 * std::numbers::pi / n;
    return dim == 1 ? h : h * h;
  }

  friend bool operator==(const TorusGrid& a, const TorusGrid& b) {
    return a.dim == b.dim && a.n == b.n;
  }
};

// Real scalar function sampled on a torus grid; row-major for d = 2
// (index i1 * n + i2, x1 varies along rows).
struct GridFunction {
  TorusGrid grid;
  std::vector<double> values;

  static GridFunction zeros(const TorusGrid& g) {
    return GridFunction{g, std::vector<double>(g.points(), 0.0)};
  }

  double& at(int i1, int i2 = 0) {
    return values[grid.dim == 1 ? static_cast<std::size_t>(i1)
                                : static_cast<std::size_t>(i1) * grid.n + i2];
  }
  double at(int i1, int i2 = 0) const {
    return values[grid.dim == 1 ? static_cast<std::size_t>(i1)
                                : static_cast<std::size_t>(i1) * grid.n + i2];
  }
};

// Sample an analytic closure (x2 is passed 0 for d = 1).
GridFunction sample_grid(const TorusGrid& g,
                         const std::function<double(double, double)>& f);

// CSV: two header lines ("d,n" then the sizes), then values row-major,
// one grid row per line; decimal formatting round-trips doubles.
void write_grid_csv(const GridFunction& f, std::ostream& os);
GridFunction read_grid_csv(std::istream& is);

}  // namespace rd
