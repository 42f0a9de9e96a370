#include "roughdrive/roughpath/level2.hpp"

#include <random>

namespace rd {

Level2RoughPath Level2RoughPath::lift_piecewise_linear(BasePath p,
                                                       double gamma_nominal) {
  if (p.samples.size() != p.grid.size())
    throw Error("lift: malformed base path");
  Level2RoughPath rp;
  rp.base_ = std::move(p);
  rp.gamma_ = gamma_nominal;

  const auto& grid = rp.base_.grid;
  const int ell = rp.base_.dim();
  const std::size_t m = grid.intervals();
  rp.slopes_.resize(m);
  rp.prefixes_.resize(m + 1);
  rp.prefixes_[0] = Eigen::MatrixXd::Zero(ell, ell);
  for (std::size_t k = 0; k < m; ++k) {
    const double h = grid.node(k + 1) - grid.node(k);
    rp.slopes_[k] = (rp.base_.samples[k + 1] - rp.base_.samples[k]) / h;
    const Eigen::VectorXd seg = rp.base_.samples[k + 1] - rp.base_.samples[k];
    const Eigen::VectorXd from0 = rp.base_.samples[k] - rp.base_.samples[0];
    rp.prefixes_[k + 1] =
        rp.prefixes_[k] + 0.5 * seg * seg.transpose() + from0 * seg.transpose();
  }
  return rp;
}

Eigen::VectorXd Level2RoughPath::increment(double s, double t) const {
  return base_.at_time(t) - base_.at_time(s);
}

Eigen::MatrixXd Level2RoughPath::prefix_at(double t) const {
  const std::size_t k = base_.segment_of(t);
  const double tk = base_.grid.node(k);
  const double dt = t - tk;
  const Eigen::VectorXd seg = slopes_[k] * dt;
  const Eigen::VectorXd from0 = base_.samples[k] - base_.samples[0];
  return prefixes_[k] + 0.5 * seg * seg.transpose() + from0 * seg.transpose();
}

Eigen::MatrixXd Level2RoughPath::iterated(double s, double t) const {
  // XX_{ts} = XX_{t0} - XX_{s0} - X_{s0} (x) X_{ts}
  const Eigen::VectorXd from0 = base_.at_time(s) - base_.samples[0];
  const Eigen::VectorXd inc = increment(s, t);
  return prefix_at(t) - prefix_at(s) - from0 * inc.transpose();
}

TwoIndexMap<Eigen::VectorXd> Level2RoughPath::increment_map() const {
  Level2RoughPath self = *this;
  return TwoIndexMap<Eigen::VectorXd>(
      grid(), [self](double s, double t) { return self.increment(s, t); });
}

TwoIndexMap<Eigen::MatrixXd> Level2RoughPath::iterated_map() const {
  Level2RoughPath self = *this;
  return TwoIndexMap<Eigen::MatrixXd>(
      grid(), [self](double s, double t) { return self.iterated(s, t); });
}

namespace {

template <class F>
void for_each_triple(const TimeGrid& g, std::size_t exhaustive_cap,
                     std::size_t sample_count, F&& f) {
  const std::size_t n = g.size();
  if (g.intervals() <= exhaustive_cap) {
    for (std::size_t i = 0; i + 2 < n; ++i)
      for (std::size_t j = i + 1; j + 1 < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) f(i, j, k);
    return;
  }
  std::mt19937_64 gen(0x9e3779b97f4a7c15ULL);  // fixed probe seed
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t r = 0; r < sample_count; ++r) {
    std::size_t a = pick(gen), b = pick(gen), c = pick(gen);
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    if (a == b || b == c) continue;
    f(a, b, c);
  }
}

template <class F>
void for_each_pair(const TimeGrid& g, std::size_t exhaustive_cap,
                   std::size_t sample_count, F&& f) {
  const std::size_t n = g.size();
  if (g.intervals() <= exhaustive_cap) {
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) f(i, j);
    return;
  }
  std::mt19937_64 gen(0xda942042e4dd58b5ULL);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t r = 0; r < sample_count; ++r) {
    std::size_t a = pick(gen), b = pick(gen);
    if (a > b) std::swap(a, b);
    if (a == b) continue;
    f(a, b);
  }
}

}  // namespace

double chen_defect_tables(
    const TimeGrid& grid,
    const std::function<Eigen::VectorXd(double, double)>& X,
    const std::function<Eigen::MatrixXd(double, double)>& XX,
    std::size_t exhaustive_cap, std::size_t sample_count) {
  double worst = 0.0;
  for_each_triple(grid, exhaustive_cap, sample_count,
                  [&](std::size_t i, std::size_t j, std::size_t k) {
                    const double s = grid.node(i), u = grid.node(j), t = grid.node(k);
                    const Eigen::MatrixXd d = XX(s, t) - XX(u, t) - XX(s, u) -
                                              X(s, u) * X(u, t).transpose();
                    worst = std::max(worst, d.norm());
                  });
  return worst;
}

double chen_defect(const Level2RoughPath& rp, std::size_t exhaustive_cap,
                   std::size_t sample_count) {
  return chen_defect_tables(
      rp.grid(), [&](double s, double t) { return rp.increment(s, t); },
      [&](double s, double t) { return rp.iterated(s, t); }, exhaustive_cap,
      sample_count);
}

double geometricity_defect_tables(
    const TimeGrid& grid,
    const std::function<Eigen::VectorXd(double, double)>& X,
    const std::function<Eigen::MatrixXd(double, double)>& XX,
    std::size_t exhaustive_cap, std::size_t sample_count) {
  double worst = 0.0;
  for_each_pair(grid, exhaustive_cap, sample_count,
                [&](std::size_t i, std::size_t j) {
                  const double s = grid.node(i), t = grid.node(j);
                  const Eigen::MatrixXd xx = XX(s, t);
                  const Eigen::VectorXd x = X(s, t);
                  const Eigen::MatrixXd d =
                      0.5 * (xx + xx.transpose()) - 0.5 * x * x.transpose();
                  worst = std::max(worst, d.norm());
                });
  return worst;
}

double geometricity_defect(const Level2RoughPath& rp, std::size_t exhaustive_cap,
                           std::size_t sample_count) {
  return geometricity_defect_tables(
      rp.grid(), [&](double s, double t) { return rp.increment(s, t); },
      [&](double s, double t) { return rp.iterated(s, t); }, exhaustive_cap,
      sample_count);
}

Level2RoughPath reverse(const Level2RoughPath& rp, double t) {
  const TimeGrid& g = rp.grid();
  const std::size_t it = g.index_of(t);  // throws off-grid
  if (it == 0) throw Error("reverse: need a positive time");
  std::vector<double> nodes(it + 1);
  std::vector<Eigen::VectorXd> samples(it + 1);
  for (std::size_t j = 0; j <= it; ++j) {
    nodes[j] = t - g.node(it - j);
    samples[j] = rp.base().samples[it - j];
  }
  nodes[0] = 0.0;
  return Level2RoughPath::lift_piecewise_linear(
      make_base_path(TimeGrid(std::move(nodes)), std::move(samples)),
      rp.gamma_nominal());
}

}  // namespace rd
