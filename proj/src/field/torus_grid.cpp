#include "roughdrive/field/torus_grid.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "roughdrive/io/csv.hpp"

namespace rd {

TorusGrid::TorusGrid(int d, int points_per_axis) : dim(d), n(points_per_axis) {
  if (d != 1 && d != 2) throw Error("TorusGrid: dimension must be 1 or 2");
  if (n < 8 || n > 256) throw Error("TorusGrid: n must lie in [8, 256]");
  if ((n & (n - 1)) != 0) throw Error("TorusGrid: n must be a power of two");
}

GridFunction sample_grid(const TorusGrid& g,
                         const std::function<double(double, double)>& f) {
  GridFunction out = GridFunction::zeros(g);
  if (g.dim == 1) {
    for (int i = 0; i < g.n; ++i) out.values[i] = f(g.coord(i), 0.0);
  } else {
    std::size_t idx = 0;
    for (int i1 = 0; i1 < g.n; ++i1) {
      const double x1 = g.coord(i1);
      for (int i2 = 0; i2 < g.n; ++i2) out.values[idx++] = f(x1, g.coord(i2));
    }
  }
  return out;
}

void write_grid_csv(const GridFunction& f, std::ostream& os) {
  os << "d,n\n" << f.grid.dim << "," << f.grid.n << "\n";
  const int rows = f.grid.dim == 1 ? 1 : f.grid.n;
  const int cols = f.grid.n;
  std::size_t idx = 0;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c) os << ",";
      os << io::format_double(f.values[idx++]);
    }
    os << "\n";
  }
}

GridFunction read_grid_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "d,n")
    throw Error("grid csv: expected 'd,n' header");
  if (!std::getline(is, line)) throw Error("grid csv: missing sizes");
  std::vector<std::string_view> cols;
  io::split_csv_line(line, cols);
  if (cols.size() != 2) throw Error("grid csv: malformed size line");
  const int d = static_cast<int>(io::parse_double(cols[0]));
  const int n = static_cast<int>(io::parse_double(cols[1]));
  GridFunction f = GridFunction::zeros(TorusGrid(d, n));

  std::size_t idx = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    io::split_csv_line(line, cols);
    for (auto c : cols) {
      if (idx >= f.values.size()) throw Error("grid csv: too many values");
      f.values[idx++] = io::parse_double(c);
    }
  }
  if (idx != f.values.size()) throw Error("grid csv: too few values");
  return f;
}

}  // namespace rd
