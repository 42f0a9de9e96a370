#include "roughdrive/driver/lyons.hpp"

#include <cmath>
#include <random>

namespace rd {

namespace {

using Mat = Eigen::MatrixXd;

// All levels over [a, b] at the given dyadic depth. Composition across a
// midpoint m is exact:
//   A^n_{ba} = A^n_{bm} + A^n_{ma} + sum_{k} A^{n-k}_{bm} A^k_{ma}.
void dyadic_levels(const BoundedDriver& d, double a, double b, int depth,
                   bool rebuild2, int n_max, std::vector<Mat>& out) {
  if (depth == 0) {
    out[0] = d.a1(a, b);
    if (n_max >= 2)
      out[1] = rebuild2 ? Mat::Zero(d.size(), d.size()) : d.a2(a, b);
    for (int n = 3; n <= n_max; ++n) out[n - 1].setZero(d.size(), d.size());
    return;
  }
  const double m = 0.5 * (a + b);
  std::vector<Mat> left(out.size()), right(out.size());
  dyadic_levels(d, a, m, depth - 1, rebuild2, n_max, left);
  dyadic_levels(d, m, b, depth - 1, rebuild2, n_max, right);
  for (int n = 1; n <= n_max; ++n) {
    Mat acc = left[n - 1] + right[n - 1];
    for (int k = 1; k < n; ++k) acc += right[n - k - 1] * left[k - 1];
    out[n - 1] = std::move(acc);
  }
}

}  // namespace

LyonsSeries lyons_series(const BoundedDriver& d, int n_max, int levels,
                         bool rebuild_level2) {
  if (n_max < 2) throw Error("lyons_series: n_max >= 2");
  const TimeGrid& g = d.grid();
  const std::size_t m = g.intervals();
  if (m > 256) throw Error("lyons_series: grid too large for dense level maps");
  const int nn = d.size();

  // per-cell level values
  std::vector<std::vector<Mat>> cells(m, std::vector<Mat>(n_max));
  for (std::size_t i = 0; i < m; ++i)
    dyadic_levels(d, g.node(i), g.node(i + 1), levels, rebuild_level2, n_max,
                  cells[i]);

  // dense upper-triangular tables per level
  const std::size_t tsize = g.size() * (g.size() + 1) / 2;
  std::vector<std::vector<Mat>> tables(
      n_max, std::vector<Mat>(tsize, Mat::Zero(nn, nn)));
  std::vector<Mat> evals(tsize, Mat::Identity(nn, nn));

  std::vector<Mat> cur(n_max), next(n_max);
  for (std::size_t is = 0; is < m; ++is) {
    for (auto& c : cur) c = Mat::Zero(nn, nn);
    for (std::size_t i = is; i < m; ++i) {
      for (int n = 1; n <= n_max; ++n) {
        Mat acc = cur[n - 1] + cells[i][n - 1];
        for (int k = 1; k < n; ++k) acc += cells[i][n - k - 1] * cur[k - 1];
        next[n - 1] = std::move(acc);
      }
      cur.swap(next);
      const std::size_t idx = TwoIndexMap<Mat>::table_index(is, i + 1);
      Mat esum = Mat::Identity(nn, nn);
      for (int n = 1; n <= n_max; ++n) {
        tables[n - 1][idx] = cur[n - 1];
        esum += cur[n - 1];
      }
      evals[idx] = std::move(esum);
    }
  }

  LyonsSeries out;
  out.grid = g;
  out.n_max = n_max;
  out.levels.reserve(n_max);
  for (int n = 1; n <= n_max; ++n)
    out.levels.push_back(
        TwoIndexMap<Mat>::from_table(g, std::move(tables[n - 1])));
  out.exp_map = TwoIndexMap<Mat>::from_table(g, std::move(evals), false);

  out.level_norms.resize(n_max, 0.0);
  for (std::size_t j = 1; j < g.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) {
      const double dt = g.node(j) - g.node(i);
      if (dt > 1.0) continue;
      for (int n = 1; n <= n_max; ++n) {
        const double q = out.levels[n - 1].at(i, j).norm() /
                         std::pow(dt, n * d.gamma());
        out.level_norms[n - 1] = std::max(out.level_norms[n - 1], q);
      }
    }
  out.truncation_error = out.level_norms.back();
  return out;
}

double flow_defect(const TwoIndexMap<Eigen::MatrixXd>& exp_map,
                   std::size_t exhaustive_cap, std::size_t sample_count) {
  const TimeGrid& g = exp_map.grid();
  double worst = 0.0;
  auto probe = [&](std::size_t i, std::size_t j, std::size_t k) {
    const Eigen::MatrixXd d =
        exp_map.at(i, k) - exp_map.at(j, k) * exp_map.at(i, j);
    worst = std::max(worst, d.norm());
  };
  const std::size_t n = g.size();
  if (g.intervals() <= exhaustive_cap) {
    for (std::size_t i = 0; i + 2 < n; ++i)
      for (std::size_t j = i + 1; j + 1 < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) probe(i, j, k);
  } else {
    std::mt19937_64 gen(0xa0761d6478bd642fULL);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t r = 0; r < sample_count; ++r) {
      std::size_t a = pick(gen), b = pick(gen), c = pick(gen);
      if (a > b) std::swap(a, b);
      if (b > c) std::swap(b, c);
      if (a > b) std::swap(a, b);
      if (a == b || b == c) continue;
      probe(a, b, c);
    }
  }
  return worst;
}

}  // namespace rd
