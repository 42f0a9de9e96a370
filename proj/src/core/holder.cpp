#include "roughdrive/core/holder.hpp"

#include <cmath>

namespace rd {

std::pair<double, double> linear_fit(const std::vector<double>& x,
                                     const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  const double slope = (n * sxy - sx * sy) / det;
  return {slope, (sy - slope * sx) / n};
}

HolderReport estimate_holder_exponent(const TwoIndexMap<double>& a, int m_min,
                                      int m_max, double floor) {
  const TimeGrid& g = a.grid();
  if (!g.dyadic_compatible())
    throw Error("estimate_holder_exponent: grid must be uniform dyadic");
  if (m_min >= m_max) throw Error("estimate_holder_exponent: m_min < m_max required");

  const double horizon = g.horizon();
  const int nscales = m_max - m_min + 1;
  std::vector<double> sup(static_cast<std::size_t>(nscales), 0.0);

  const std::size_t n = g.size();
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const double dt = g.node(j) - g.node(i);
      // dt in [T 2^{-m}, T 2^{-m+1})  <=>  m = ceil(log2(T/dt))
      const int m = static_cast<int>(std::ceil(std::log2(horizon / dt) - 1e-9));
      if (m < m_min || m > m_max) continue;
      const double v = std::fabs(a.at(i, j));
      std::size_t idx = static_cast<std::size_t>(m - m_min);
      if (v > sup[idx]) sup[idx] = v;
    }
  }

  HolderReport rep;
  std::vector<double> lx, ly;
  for (int m = m_min; m <= m_max; ++m) {
    const double s = sup[static_cast<std::size_t>(m - m_min)];
    if (s > floor) {
      rep.scales_used.push_back(m);
      rep.per_scale_sup.push_back(s);
      lx.push_back(std::log(horizon * std::pow(2.0, -m)));
      ly.push_back(std::log(s));
    }
  }
  if (rep.scales_used.size() < 2)
    throw EstimationError(
        "estimate_holder_exponent: fewer than two scales above the floor");

  auto [slope, intercept] = linear_fit(lx, ly);
  rep.slope = slope;
  rep.intercept = intercept;
  return rep;
}

}  // namespace rd
