#pragma once

#include <cmath>
#include <limits>
#include <span>

#include "roughdrive/core/multi_index.hpp"

namespace rd {

struct SewingOptions {
  int levels = 12;            // dyadic depth per grid interval
  double early_stop = 1e-13;  // relative level-to-level stop threshold
  double zeta = 2.0;          // almost-additivity exponent, > 1
};

namespace detail {

// Limit of the dyadic Riemann sums of a over [s, t]. Successive depths
// must eventually contract (geometric rate 2^{-n(zeta-1)}); two
// consecutive growing differences above noise are reported as divergence.
template <class E>
E dyadic_interval_sum(const TwoIndexMap<E>& a, double s, double t,
                      const SewingOptions& opt) {
  E prev = a(s, t);
  double prev_diff = std::numeric_limits<double>::infinity();
  int growing = 0;
  for (int n = 1; n <= opt.levels; ++n) {
    const std::size_t cells = std::size_t{1} << n;
    const double h = (t - s) / static_cast<double>(cells);
    double left = s;
    E cur = value::zero_like(prev);
    for (std::size_t i = 0; i < cells; ++i) {
      const double right = (i + 1 == cells) ? t : s + h * static_cast<double>(i + 1);
      cur = cur + a(left, right);
      left = right;
    }
    const double scale = std::max(1.0, value::norm(cur));
    const double diff = value::norm(cur - prev);
    if (diff <= opt.early_stop * scale) return cur;
    if (diff > prev_diff * (1.0 + 1e-9) && n >= 3) {
      if (++growing >= 2 && diff > 1e-10 * scale)
        throw SewingDivergence("sew: dyadic sums are not converging");
    } else {
      growing = 0;
    }
    prev = cur;
    prev_diff = diff;
  }
  return prev;
}

}  // namespace detail

// Sewing construction: the additive path A with A_0 = 0 whose increments
// are the compensated dyadic limits of a. Node-only maps are summed at
// grid resolution (their grid is the finest scale they know about); for
// exactly additive maps both routes telescope to the same path.
template <class E>
Path<E> sew(const TwoIndexMap<E>& a, const SewingOptions& opt) {
  if (!(opt.zeta > 1.0)) throw Error("sew: zeta must exceed 1");
  if (opt.levels < 0) throw Error("sew: nonnegative depth required");
  const TimeGrid& g = a.grid();
  std::vector<E> values;
  values.reserve(g.size());
  E acc = value::zero_like(a(g.node(0), g.node(1)));
  values.push_back(acc);
  for (std::size_t k = 0; k + 1 < g.size(); ++k) {
    const double s = g.node(k), t = g.node(k + 1);
    if (a.node_only() || opt.levels == 0)
      acc = acc + a(s, t);
    else
      acc = acc + detail::dyadic_interval_sum(a, s, t, opt);
    values.push_back(acc);
  }
  return Path<E>{g, std::move(values)};
}

template <class E>
Path<E> sew(const TwoIndexMap<E>& a, double zeta, int levels = 12) {
  SewingOptions opt;
  opt.zeta = zeta;
  opt.levels = levels;
  return sew(a, opt);
}

// Lambda(a) = delta(sew(a)) - a as a node-only map; its weighted zeta-norm
// is controlled by the zeta-norm of delta(a).
template <class E>
TwoIndexMap<E> sewing_defect(const Path<E>& A, const TwoIndexMap<E>& a) {
  auto values = std::make_shared<std::vector<E>>(A.values);
  TimeGrid grid = A.grid;
  auto rule = [values, grid, a](double s, double t) -> E {
    return ((*values)[grid.index_of(t)] - (*values)[grid.index_of(s)]) - a(s, t);
  };
  return TwoIndexMap<E>(A.grid, std::move(rule), true, true);
}

// |delta A_{ts} - sum_i a_{t_{i+1} t_i}| over the cells of a partition of
// [s, t]; partition nodes are increasing with endpoints on A's grid.
template <class E>
double riemann_sum_defect(const TwoIndexMap<E>& a, const Path<E>& A,
                          std::span<const double> partition) {
  if (partition.size() < 2)
    throw Error("riemann_sum_defect: partition needs at least two nodes");
  for (std::size_t i = 1; i < partition.size(); ++i)
    if (!(partition[i] > partition[i - 1]))
      throw Error("riemann_sum_defect: partition must be increasing");
  const double s = partition.front(), t = partition.back();
  const std::size_t is = A.grid.index_of(s), it = A.grid.index_of(t);
  E sum = value::zero_like(A.values[0]);
  for (std::size_t i = 0; i + 1 < partition.size(); ++i)
    sum = sum + a(partition[i], partition[i + 1]);
  return value::norm((A.values[it] - A.values[is]) - sum);
}

}  // namespace rd
