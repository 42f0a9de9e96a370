#pragma once

#include <vector>

#include "roughdrive/core/weighted_norms.hpp"
#include "roughdrive/driver/bounded_driver.hpp"

namespace rd {

// One interval of the driver grid split into `factor` equal parts.
TimeGrid refine_uniform(const TimeGrid& g, int factor);

template <class State>
struct IntegrationResult {
  Path<State> path;              // on the marching grid
  TwoIndexMap<State> remainder;  // f#_{ts} = delta f - (A1 + A2) f_s, driver nodes
};

namespace detail {

template <class State>
TwoIndexMap<State> make_remainder_on(const TimeGrid& rg, const BoundedDriver& d,
                                     const Path<State>& f) {
  auto vals = std::make_shared<std::vector<State>>();
  vals->reserve(rg.size());
  for (double t : rg.nodes()) vals->push_back(f.values[f.grid.index_of(t)]);
  const TimeGrid grid = rg;
  const BoundedDriver drv = d;
  auto rule = [vals, grid, drv](double s, double t) -> State {
    const std::size_t i = grid.index_of(s), j = grid.index_of(t);
    return (*vals)[j] - (*vals)[i] - (drv.a1(s, t) + drv.a2(s, t)) * (*vals)[i];
  };
  return TwoIndexMap<State>(grid, std::move(rule), true, true);
}

template <class State>
TwoIndexMap<State> make_remainder(const BoundedDriver& d, const Path<State>& f) {
  // the remainder lives on the coarser of the two grids
  const TimeGrid& rg = d.grid().refined_by(f.grid) ? d.grid() : f.grid;
  return make_remainder_on(rg, d, f);
}

}  // namespace detail

// One-step scheme f_{k+1} = (Id + A1 + A2) f_k. The marching grid either
// refines the driver grid (the usual case; the remainder map is recorded
// on the driver grid) or is a node-subset of it (coarsened solves against
// a fixed fine lift; the remainder then lives on the marching grid).
template <class State>
IntegrationResult<State> euler_integrate(const BoundedDriver& d, const State& f0,
                                         const TimeGrid& sub) {
  if (!d.grid().refined_by(sub) && !sub.refined_by(d.grid()))
    throw Error("euler_integrate: marching grid must nest with the driver grid");
  std::vector<State> values;
  values.reserve(sub.size());
  values.push_back(f0);
  State f = f0;
  for (std::size_t k = 0; k + 1 < sub.size(); ++k) {
    const double s = sub.node(k), t = sub.node(k + 1);
    f = f + (d.a1(s, t) + d.a2(s, t)) * f;
    values.push_back(f);
  }
  Path<State> path{sub, std::move(values)};
  return IntegrationResult<State>{path, detail::make_remainder(d, path)};
}

template <class State>
struct PicardResult {
  Path<State> path;              // restricted to the driver grid
  TwoIndexMap<State> remainder;
  std::vector<double> increment_norms;  // weighted norms of f^n - f^{n-1}
  double lambda = 1.0;                  // scale used for those norms
  int iterations = 0;
};

// Picard iteration: f^0 = f0, f^1 = f0 + A1_{t0} f0, then each candidate
// map A1_{ts} f^n_s + A2_{ts} f^{n-1}_s is summed over a dyadically
// refined grid (the discrete sewing of the fixed-point step).
template <class State>
PicardResult<State> picard_integrate(const BoundedDriver& d, const State& f0,
                                     int iters, int refine = 32,
                                     double lambda = 0.0) {
  if (iters < 1) throw Error("picard_integrate: at least one iteration");
  if (!(d.gamma() * 3.0 > 1.0))
    throw Error("picard_integrate: need 3 gamma > 1");
  const TimeGrid fine = refine_uniform(d.grid(), refine);
  const std::size_t n = fine.size();

  // per-cell driver increments, shared across iterations
  std::vector<Eigen::MatrixXd> a1c(n - 1), a2c(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    a1c[k] = d.a1(fine.node(k), fine.node(k + 1));
    a2c[k] = d.a2(fine.node(k), fine.node(k + 1));
  }

  if (lambda <= 0.0) {
    const double na = std::max(d.norm(), 1e-9);
    lambda = std::min(1.0, std::pow(4.0 * na, -1.0 / d.gamma()));
  }
  const WeightedNormParams wp{lambda, d.gamma()};

  std::vector<State> prev(n, f0), cur(n, f0);
  for (std::size_t k = 0; k + 1 < n; ++k)
    cur[k + 1] = f0 + (d.a1(0.0, fine.node(k + 1)) * f0);

  PicardResult<State> res;
  res.lambda = lambda;
  auto restrict_to_driver = [&](const std::vector<State>& v) {
    std::vector<State> out;
    out.reserve(d.grid().size());
    for (double t : d.grid().nodes()) out.push_back(v[fine.index_of(t)]);
    return out;
  };

  auto diff_norm = [&](const std::vector<State>& a, const std::vector<State>& b) {
    std::vector<State> dv;
    dv.reserve(d.grid().size());
    for (double t : d.grid().nodes()) {
      const std::size_t i = fine.index_of(t);
      dv.push_back(a[i] - b[i]);
    }
    return weighted_path_norm(Path<State>{d.grid(), std::move(dv)}, wp);
  };

  res.increment_norms.push_back(diff_norm(cur, prev));
  std::vector<State> next(n, f0);
  for (int it = 2; it <= iters; ++it) {
    next[0] = f0;
    for (std::size_t k = 0; k + 1 < n; ++k)
      next[k + 1] = next[k] + a1c[k] * cur[k] + a2c[k] * prev[k];
    res.increment_norms.push_back(diff_norm(next, cur));
    prev.swap(cur);
    cur.swap(next);
  }
  res.iterations = iters;
  Path<State> path{d.grid(), restrict_to_driver(cur)};
  res.remainder = detail::make_remainder(d, path);
  res.path = std::move(path);
  return res;
}

// Piecewise-constant drift lookup: value at the last drift node <= t.
Eigen::MatrixXd drift_at(const Path<Eigen::MatrixXd>& drift, double t);

// f_{k+1} = (Id + h B_{t_k} + A1 + A2) f_k
template <class State>
IntegrationResult<State> integrate_with_drift(const BoundedDriver& d,
                                              const Path<Eigen::MatrixXd>& drift,
                                              const State& f0,
                                              const TimeGrid& sub) {
  if (!d.grid().refined_by(sub))
    throw Error("integrate_with_drift: marching grid must refine the driver grid");
  std::vector<State> values;
  values.reserve(sub.size());
  values.push_back(f0);
  State f = f0;
  for (std::size_t k = 0; k + 1 < sub.size(); ++k) {
    const double s = sub.node(k), t = sub.node(k + 1);
    const double h = t - s;
    f = f + h * (drift_at(drift, s) * f) + (d.a1(s, t) + d.a2(s, t)) * f;
    values.push_back(f);
  }
  Path<State> path{sub, std::move(values)};
  // remainder of the driftless expansion is not meaningful here; record
  // the drift-inclusive defect instead
  auto vals = std::make_shared<std::vector<State>>();
  for (double t : d.grid().nodes()) vals->push_back(path.values[sub.index_of(t)]);
  const TimeGrid dg = d.grid();
  const BoundedDriver drv = d;
  const Path<Eigen::MatrixXd> b = drift;
  auto rule = [vals, dg, drv, b](double s, double t) -> State {
    const std::size_t i = dg.index_of(s), j = dg.index_of(t);
    return (*vals)[j] - (*vals)[i] - (t - s) * (drift_at(b, s) * (*vals)[i]) -
           (drv.a1(s, t) + drv.a2(s, t)) * (*vals)[i];
  };
  return IntegrationResult<State>{
      path, TwoIndexMap<State>(dg, std::move(rule), true, true)};
}

struct GrowthBoundResult {
  bool passed = false;
  double lambda_used = 0.0;
  double ratio = 0.0;      // achieved |(f)| / |f0| at lambda_used
  double min_ratio = 0.0;  // best ratio seen over the whole scan
  std::vector<std::pair<double, double>> scan;  // (lambda, ratio), descending
};

// Scan lambda = 2^{-j} downward until the weighted norm of the Euler
// solution is within a factor 2 of |f0|.
template <class State>
GrowthBoundResult growth_bound_check(const BoundedDriver& d, const State& f0,
                                     int refine = 32, int max_pow = 18) {
  const double f0n = value::norm(f0);
  auto sol = euler_integrate(d, f0, refine_uniform(d.grid(), refine));
  GrowthBoundResult res;
  res.min_ratio = std::numeric_limits<double>::infinity();
  for (int j = 0; j <= max_pow; ++j) {
    const double lambda = std::pow(2.0, -j);
    const double nrm = weighted_path_norm(sol.path, WeightedNormParams{lambda, 0.5});
    const double ratio = f0n > 0.0 ? nrm / f0n
                                   : std::numeric_limits<double>::infinity();
    res.scan.emplace_back(lambda, ratio);
    res.min_ratio = std::min(res.min_ratio, ratio);
    if (ratio <= 2.0) {
      res.passed = true;
      res.lambda_used = lambda;
      res.ratio = ratio;
      break;
    }
  }
  return res;
}

}  // namespace rd
