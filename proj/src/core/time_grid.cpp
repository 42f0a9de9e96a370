#include "roughdrive/core/time_grid.hpp"

#include <algorithm>
#include <cmath>

namespace rd {

namespace {
double node_tol(double horizon) { return 1e-12 * std::max(1.0, horizon); }
}  // namespace

TimeGrid::TimeGrid(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw Error("TimeGrid: at least two nodes required");
  if (std::fabs(nodes_.front()) > 1e-15) throw Error("TimeGrid: must start at 0");
  for (std::size_t i = 1; i < nodes_.size(); ++i)
    if (!(nodes_[i] > nodes_[i - 1]))
      throw Error("TimeGrid: nodes must be strictly increasing");
  nodes_.front() = 0.0;
}

TimeGrid TimeGrid::uniform(double horizon, std::size_t intervals) {
  if (!(horizon > 0.0)) throw Error("TimeGrid::uniform: horizon must be > 0");
  if (intervals < 1) throw Error("TimeGrid::uniform: at least one interval");
  std::vector<double> nodes(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i)
    nodes[i] = horizon * static_cast<double>(i) / static_cast<double>(intervals);
  nodes.back() = horizon;
  return TimeGrid(std::move(nodes));
}

std::size_t TimeGrid::index_of(double t) const {
  const double tol = node_tol(horizon());
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), t - tol);
  if (it == nodes_.end() || std::fabs(*it - t) > tol)
    throw Error("TimeGrid: time is not a grid node");
  return static_cast<std::size_t>(it - nodes_.begin());
}

bool TimeGrid::is_node(double t) const {
  const double tol = node_tol(horizon());
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), t - tol);
  return it != nodes_.end() && std::fabs(*it - t) <= tol;
}

double TimeGrid::max_spacing() const {
  double h = 0.0;
  for (std::size_t i = 1; i < nodes_.size(); ++i)
    h = std::max(h, nodes_[i] - nodes_[i - 1]);
  return h;
}

bool TimeGrid::uniform_spacing() const {
  const double h = nodes_[1] - nodes_[0];
  const double tol = node_tol(horizon());
  for (std::size_t i = 1; i < nodes_.size(); ++i)
    if (std::fabs(nodes_[i] - nodes_[i - 1] - h) > tol) return false;
  return true;
}

bool TimeGrid::dyadic_compatible() const {
  const std::size_t m = intervals();
  return uniform_spacing() && (m & (m - 1)) == 0;
}

bool TimeGrid::refined_by(const TimeGrid& fine) const {
  for (double t : nodes_)
    if (!fine.is_node(t)) return false;
  return true;
}

}  // namespace rd
