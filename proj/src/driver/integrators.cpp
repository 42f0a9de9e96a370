#include "roughdrive/driver/integrators.hpp"

#include <algorithm>

namespace rd {

TimeGrid refine_uniform(const TimeGrid& g, int factor) {
  if (factor < 1) throw Error("refine_uniform: factor >= 1");
  if (factor == 1) return g;
  std::vector<double> nodes;
  nodes.reserve(g.intervals() * factor + 1);
  for (std::size_t k = 0; k + 1 < g.size(); ++k) {
    const double a = g.node(k), b = g.node(k + 1);
    for (int i = 0; i < factor; ++i)
      nodes.push_back(a + (b - a) * static_cast<double>(i) / factor);
  }
  nodes.push_back(g.horizon());
  nodes.front() = 0.0;
  return TimeGrid(std::move(nodes));
}

Eigen::MatrixXd drift_at(const Path<Eigen::MatrixXd>& drift, double t) {
  const auto& nodes = drift.grid.nodes();
  auto it = std::upper_bound(nodes.begin(), nodes.end(), t + 1e-15);
  const std::size_t idx =
      it == nodes.begin() ? 0 : static_cast<std::size_t>(it - nodes.begin()) - 1;
  return drift.values[std::min(idx, drift.values.size() - 1)];
}

}  // namespace rd
