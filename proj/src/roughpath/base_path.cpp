#include "roughdrive/roughpath/base_path.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>

#include "roughdrive/io/csv.hpp"

namespace rd {

std::size_t BasePath::segment_of(double t) const {
  const auto& nodes = grid.nodes();
  if (t <= nodes.front()) return 0;
  if (t >= nodes.back()) return nodes.size() - 2;
  auto it = std::upper_bound(nodes.begin(), nodes.end(), t);
  return static_cast<std::size_t>(it - nodes.begin()) - 1;
}

Eigen::VectorXd BasePath::at_time(double t) const {
  const std::size_t k = segment_of(t);
  const double t0 = grid.node(k), t1 = grid.node(k + 1);
  const double w = (t - t0) / (t1 - t0);
  return (1.0 - w) * samples[k] + w * samples[k + 1];
}

BasePath make_base_path(TimeGrid grid, std::vector<Eigen::VectorXd> samples) {
  if (samples.size() != grid.size())
    throw Error("make_base_path: one sample per node required");
  if (samples.size() < 2 || samples[0].size() < 1)
    throw Error("make_base_path: dimension >= 1 and >= 2 samples required");
  for (const auto& s : samples)
    if (s.size() != samples[0].size())
      throw Error("make_base_path: inconsistent sample dimensions");
  return BasePath{std::move(grid), std::move(samples)};
}

void write_base_path_csv(const BasePath& p, std::ostream& os) {
  os << "t";
  for (int j = 1; j <= p.dim(); ++j) os << ",x" << j;
  os << "\n";
  for (std::size_t i = 0; i < p.grid.size(); ++i) {
    os << io::format_double(p.grid.node(i));
    for (int j = 0; j < p.dim(); ++j)
      os << "," << io::format_double(p.samples[i][j]);
    os << "\n";
  }
}

BasePath read_base_path_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error("base path csv: missing header");
  std::vector<std::string_view> cols;
  io::split_csv_line(line, cols);
  if (cols.size() < 2 || cols[0] != "t")
    throw Error("base path csv: header must be t,x1,...");
  const int ell = static_cast<int>(cols.size()) - 1;

  std::vector<double> times;
  std::vector<Eigen::VectorXd> samples;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    io::split_csv_line(line, cols);
    if (static_cast<int>(cols.size()) != ell + 1)
      throw Error("base path csv: inconsistent column count");
    times.push_back(io::parse_double(cols[0]));
    Eigen::VectorXd x(ell);
    for (int j = 0; j < ell; ++j) x[j] = io::parse_double(cols[j + 1]);
    samples.push_back(std::move(x));
  }
  return make_base_path(TimeGrid(std::move(times)), std::move(samples));
}

}  // namespace rd
