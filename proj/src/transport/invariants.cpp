#include "roughdrive/transport/invariants.hpp"

#include <cmath>
#include <map>

#include "roughdrive/field/spectral.hpp"
#include "roughdrive/roughpath/brownian.hpp"

namespace rd {

ConservationReport conservation_report(const TransportSolution& sol) {
  if (!sol.field.divergence_free)
    throw Error("conservation_report: field set is not divergence free");
  ConservationReport rep;
  const double base = l2_norm(sol.snapshots.front());
  if (base == 0.0) {
    rep.zero_norm = true;
    rep.drift.assign(sol.snapshots.size(), 0.0);
    return rep;
  }
  rep.drift.reserve(sol.snapshots.size());
  for (const auto& snap : sol.snapshots) {
    const double d = std::fabs(l2_norm(snap) - base) / base;
    rep.drift.push_back(d);
    rep.max_drift = std::max(rep.max_drift, d);
  }
  return rep;
}

MaxPrincipleReport maximum_principle_report(const TransportSolution& sol) {
  MaxPrincipleReport rep;
  // exact analytic sup, sanity-checked against a fine probe grid
  double probe = 0.0;
  const int nprobe = 512;
  const int n2 = sol.space.dim == 1 ? 1 : nprobe;
  for (int i = 0; i < nprobe; ++i)
    for (int j = 0; j < n2; ++j) {
      const double x1 = 2.0 * std::numbers::pi * i / nprobe;
      const double x2 = 2.0 * std::numbers::pi * j / nprobe;
      probe = std::max(probe, std::fabs(sol.datum.value(x1, x2)));
    }
  rep.sup_reference = std::max(sol.datum.sup_abs, probe);
  rep.drift.reserve(sol.snapshots.size());
  rep.max_drift = -std::numeric_limits<double>::infinity();
  for (const auto& snap : sol.snapshots) {
    const double d = max_abs(snap) - rep.sup_reference;
    rep.drift.push_back(d);
    rep.max_drift = std::max(rep.max_drift, d);
  }
  return rep;
}

double interpolated_variant_max_drift(const TransportSolution& sol) {
  const TorusGrid& g = sol.space;
  GridFunction samples = sample_grid(
      g, [&](double a, double b) { return sol.datum.value(a, b); });
  const double h = 2.0 * std::numbers::pi / g.n;
  // Catmull-Rom cubic (the usual semi-Lagrangian choice); unlike the
  // analytic evaluation it can overshoot the datum's range.
  auto cubic = [](double fm1, double f0, double f1, double f2, double w) {
    return f0 + 0.5 * w * (f1 - fm1 +
                           w * (2.0 * fm1 - 5.0 * f0 + 4.0 * f1 - f2 +
                                w * (3.0 * (f0 - f1) + f2 - fm1)));
  };
  auto wrapi = [&](int i) { return ((i % g.n) + g.n) % g.n; };
  auto interp = [&](double x1, double x2) {
    const double u = x1 / h, v = x2 / h;
    const int i0 = static_cast<int>(std::floor(u));
    const double fu = u - std::floor(u);
    if (g.dim == 1)
      return cubic(samples.at(wrapi(i0 - 1)), samples.at(wrapi(i0)),
                   samples.at(wrapi(i0 + 1)), samples.at(wrapi(i0 + 2)), fu);
    const int j0 = static_cast<int>(std::floor(v));
    const double fv = v - std::floor(v);
    double rows[4];
    for (int r = -1; r <= 2; ++r) {
      const int ii = wrapi(i0 + r);
      rows[r + 1] = cubic(samples.at(ii, wrapi(j0 - 1)), samples.at(ii, wrapi(j0)),
                          samples.at(ii, wrapi(j0 + 1)), samples.at(ii, wrapi(j0 + 2)),
                          fv);
    }
    return cubic(rows[0], rows[1], rows[2], rows[3], fu);
  };

  const double horizon = sol.path.grid().horizon();
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < sol.times.size(); ++k) {
    const double t = sol.times.node(k);
    double m = 0.0;
    if (t == 0.0) {
      m = max_abs(samples);
    } else {
      const int steps = std::max(
          1, static_cast<int>(std::llround(sol.substeps * t / horizon)));
      auto feet = characteristics_solve(sol.field, sol.path, t, g, steps);
      for (std::size_t p = 0; p < g.points(); ++p)
        m = std::max(m, std::fabs(interp(feet.y1[p],
                                         g.dim == 2 ? feet.y2[p] : 0.0)));
    }
    worst = std::max(worst, m - sol.datum.sup_abs);
  }
  return worst;
}

namespace {

std::map<std::string, std::function<double(double)>> build_renorms() {
  std::map<std::string, std::function<double(double)>> m;
  m["square"] = [](double u) { return u * u; };
  m["cube"] = [](double u) { return u * u * u; };
  m["tanh_bump"] = [](double u) { return std::tanh(u); };
  return m;
}

const std::map<std::string, std::function<double(double)>>& renorms() {
  static const auto m = build_renorms();
  return m;
}

}  // namespace

const std::function<double(double)>& renorm_function(const std::string& id) {
  auto it = renorms().find(id);
  if (it == renorms().end()) throw Error("unknown renormalization map '" + id + "'");
  return it->second;
}

std::vector<std::string> renorm_function_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, f] : renorms()) ids.push_back(id);
  return ids;
}

StabilityTable stability_sweep(const VectorFieldSet& V, std::uint64_t seed,
                               const std::vector<int>& levels,
                               const InitialDatum& f0, double horizon,
                               const TimeGrid& times, const TorusGrid& space,
                               int substeps) {
  if (levels.empty()) throw Error("stability_sweep: need levels");
  BasePath fine =
      sample_brownian_pl(seed, horizon, std::size_t{1} << levels.back(), V.ell());
  return stability_sweep_from(V, fine, levels, f0, times, space, substeps);
}

StabilityTable stability_sweep_from(const VectorFieldSet& V,
                                    const BasePath& fine,
                                    const std::vector<int>& levels,
                                    const InitialDatum& f0, const TimeGrid& times,
                                    const TorusGrid& space, int substeps) {
  if (levels.size() < 2) throw Error("stability_sweep: need at least two levels");
  for (std::size_t i = 1; i < levels.size(); ++i)
    if (levels[i] <= levels[i - 1])
      throw Error("stability_sweep: levels must be increasing");
  const int finest = levels.back();
  if (fine.grid.intervals() != (std::size_t{1} << finest))
    throw Error("stability_sweep: finest sample must live on the top level grid");

  std::vector<TransportSolution> sols;
  sols.reserve(levels.size());
  for (int m : levels) {
    const std::size_t stride = std::size_t{1} << (finest - m);
    std::vector<double> nodes;
    std::vector<Eigen::VectorXd> samples;
    for (std::size_t k = 0; k < fine.grid.size(); k += stride) {
      nodes.push_back(fine.grid.node(k));
      samples.push_back(fine.samples[k]);
    }
    auto rp = Level2RoughPath::lift_piecewise_linear(
        make_base_path(TimeGrid(std::move(nodes)), std::move(samples)), 0.4);
    sols.push_back(transport_solve(V, rp, f0, times, space, substeps));
  }

  StabilityTable table;
  table.levels = levels;
  table.dist.assign(levels.size(), std::vector<double>(levels.size(), 0.0));
  for (std::size_t a = 0; a < sols.size(); ++a)
    for (std::size_t b = a + 1; b < sols.size(); ++b) {
      double worst = 0.0;
      for (std::size_t k = 0; k < times.size(); ++k) {
        GridFunction diff = sols[a].snapshots[k];
        for (std::size_t i = 0; i < diff.values.size(); ++i)
          diff.values[i] -= sols[b].snapshots[k].values[i];
        worst = std::max(worst, l2_norm(diff));
      }
      table.dist[a][b] = table.dist[b][a] = worst;
    }
  for (std::size_t a = 0; a + 1 < sols.size(); ++a)
    table.consecutive.push_back(table.dist[a][a + 1]);
  return table;
}

}  // namespace rd
