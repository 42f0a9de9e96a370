#pragma once

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "roughdrive/core/time_grid.hpp"
#include "roughdrive/core/value_traits.hpp"

namespace rd {

// 2-index map a_{ts}, s <= t. Carried either by an analytic rule valid for
// arbitrary times in [0, T] (needed by the dyadic sewing refinement), or by
// node-only data (increments of sampled paths, dense tables); node-only maps
// may only be evaluated at grid nodes.
template <class E>
class TwoIndexMap {
 public:
  using Rule = std::function<E(double, double)>;

  TwoIndexMap() = default;
  TwoIndexMap(TimeGrid grid, Rule rule, bool increment_like = true,
              bool node_only = false)
      : grid_(std::move(grid)),
        rule_(std::move(rule)),
        increment_like_(increment_like),
        node_only_(node_only) {}

  static TwoIndexMap from_table(TimeGrid grid, std::vector<E> upper,
                                bool increment_like = true) {
    const std::size_t n = grid.size();
    if (upper.size() != n * (n + 1) / 2)
      throw Error("TwoIndexMap::from_table: bad table size");
    auto data = std::make_shared<std::vector<E>>(std::move(upper));
    TwoIndexMap m(std::move(grid), Rule{}, increment_like, true);
    m.table_ = std::move(data);
    return m;
  }

  static std::size_t table_index(std::size_t i, std::size_t j) {
    return j * (j + 1) / 2 + i;  // i <= j
  }

  // a_{ts} with s = time of first argument, t of the second.
  E operator()(double s, double t) const {
    if (node_only_) return at(grid_.index_of(s), grid_.index_of(t));
    return rule_(s, t);
  }

  E at(std::size_t i, std::size_t j) const {
    if (table_) return (*table_)[table_index(i, j)];
    return rule_(grid_.node(i), grid_.node(j));
  }

  const TimeGrid& grid() const { return grid_; }
  bool increment_like() const { return increment_like_; }
  bool node_only() const { return node_only_; }

 private:
  TimeGrid grid_;
  Rule rule_;
  std::shared_ptr<std::vector<E>> table_;
  bool increment_like_ = true;
  bool node_only_ = false;
};

// 3-index map b_{tus}, s <= u <= t.
template <class E>
class ThreeIndexMap {
 public:
  using Rule = std::function<E(double, double, double)>;  // (s, u, t)

  ThreeIndexMap() = default;
  ThreeIndexMap(TimeGrid grid, Rule rule, bool node_only = false)
      : grid_(std::move(grid)), rule_(std::move(rule)), node_only_(node_only) {}

  E operator()(double s, double u, double t) const { return rule_(s, u, t); }
  E at(std::size_t i, std::size_t j, std::size_t k) const {
    return rule_(grid_.node(i), grid_.node(j), grid_.node(k));
  }

  const TimeGrid& grid() const { return grid_; }
  bool node_only() const { return node_only_; }

 private:
  TimeGrid grid_;
  Rule rule_;
  bool node_only_ = false;
};

// (delta f)_{ts} = f_t - f_s for a sampled path; node-only by construction.
template <class E>
TwoIndexMap<E> delta1(const Path<E>& f) {
  auto values = std::make_shared<std::vector<E>>(f.values);
  TimeGrid grid = f.grid;
  auto rule = [values, grid](double s, double t) -> E {
    return (*values)[grid.index_of(t)] - (*values)[grid.index_of(s)];
  };
  return TwoIndexMap<E>(f.grid, std::move(rule), true, true);
}

// (delta a)_{tus} = a_{ts} - a_{tu} - a_{us}; vanishes iff a is additive.
template <class E>
ThreeIndexMap<E> delta2(const TwoIndexMap<E>& a) {
  auto rule = [a](double s, double u, double t) -> E {
    return a(s, t) - a(u, t) - a(s, u);
  };
  return ThreeIndexMap<E>(a.grid(), std::move(rule), a.node_only());
}

}  // namespace rd
