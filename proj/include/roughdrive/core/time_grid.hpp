#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "roughdrive/errors.hpp"

namespace rd {

// Finite partition 0 = t_0 < t_1 < ... < t_M = T of a time interval.
class TimeGrid {
 public:
  TimeGrid() = default;
  explicit TimeGrid(std::vector<double> nodes);

  static TimeGrid uniform(double horizon, std::size_t intervals);

  double horizon() const { return nodes_.empty() ? 0.0 : nodes_.back(); }
  std::size_t size() const { return nodes_.size(); }        // M+1 nodes
  std::size_t intervals() const { return nodes_.size() - 1; }
  double node(std::size_t i) const { return nodes_[i]; }
  const std::vector<double>& nodes() const { return nodes_; }

  // Index of a node equal to t (within a relative tolerance); throws if
  // t is not a grid node.
  std::size_t index_of(double t) const;
  bool is_node(double t) const;

  double max_spacing() const;
  bool uniform_spacing() const;
  // Uniform with a power-of-two interval count; required by the dyadic
  // scale binning of the exponent estimator.
  bool dyadic_compatible() const;

  // True if every node of this grid appears in `fine`.
  bool refined_by(const TimeGrid& fine) const;

 private:
  std::vector<double> nodes_;
};

// Grid-sampled path with one value per node.
template <class E>
struct Path {
  TimeGrid grid;
  std::vector<E> values;

  const E& at(std::size_t i) const { return values[i]; }
  E& at(std::size_t i) { return values[i]; }
};

template <class E>
Path<E> make_path(TimeGrid grid, std::vector<E> values) {
  if (values.size() != grid.size())
    throw Error("make_path: one value per grid node required");
  return Path<E>{std::move(grid), std::move(values)};
}

template <class E>
Path<E> sample_path(const TimeGrid& grid, const std::function<E(double)>& f) {
  std::vector<E> vals;
  vals.reserve(grid.size());
  for (double t : grid.nodes()) vals.push_back(f(t));
  return Path<E>{grid, std::move(vals)};
}

}  // namespace rd
