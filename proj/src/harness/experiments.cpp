#include "roughdrive/harness/experiments.hpp"

#include <cmath>
#include <sstream>

#include "num_oracles.hpp"
#include "roughdrive/driver/driver_library.hpp"
#include "roughdrive/driver/integrators.hpp"
#include "roughdrive/driver/lyons.hpp"
#include "roughdrive/field/spectral.hpp"
#include "roughdrive/io/csv.hpp"
#include "roughdrive/roughpath/brownian.hpp"
#include "roughdrive/sewing/sewing.hpp"
#include "roughdrive/transport/invariants.hpp"

namespace rd {

namespace {

using Json = nlohmann::ordered_json;

Level2RoughPath make_lift(const std::string& id, std::size_t m, int ell,
                          double horizon, double gamma, std::uint64_t seed) {
  if (id == "brownian")
    return Level2RoughPath::lift_piecewise_linear(
        sample_brownian_pl(seed, horizon, m, ell), gamma);
  auto grid = TimeGrid::uniform(horizon, m);
  std::vector<Eigen::VectorXd> s;
  s.reserve(grid.size());
  for (double t : grid.nodes()) {
    Eigen::VectorXd x(ell);
    if (id == "line") {
      for (int j = 0; j < ell; ++j) x[j] = t;
    } else if (id == "poly") {
      for (int j = 0; j < ell; ++j) x[j] = std::pow(t, j + 1);
    } else if (id == "spiral") {
      for (int j = 0; j < ell; ++j)
        x[j] = j % 2 == 0 ? std::sin((j / 2 + 1.0) * t)
                          : 0.5 * std::cos((j / 2 + 1.0) * 2.0 * t);
    } else {
      throw ConfigError("config.path: unknown base path '" + id + "'");
    }
    s.push_back(std::move(x));
  }
  return Level2RoughPath::lift_piecewise_linear(
      make_base_path(std::move(grid), std::move(s)), gamma);
}

std::string snapshot_csv(const GridFunction& f) {
  std::ostringstream os;
  write_grid_csv(f, os);
  return os.str();
}

Report run_sew_demo(const ExperimentConfig& cfg) {
  Report rep;
  rep.config = cfg.doc();
  const int levels = cfg.geti("levels");
  auto grid = TimeGrid::uniform(1.0, static_cast<std::size_t>(cfg.geti("time_m")));
  TwoIndexMap<double> a(grid, [](double s, double t) { return s * (t - s); });
  auto A = sew(a, 2.0, levels);

  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    worst = std::max(worst,
                     std::fabs(A.values[i] - 0.5 * grid.node(i) * grid.node(i)));
  rep.add(check_le("sew_error_vs_closed_form", worst, std::pow(2.0, -levels)));

  std::vector<double> hs, ds;
  for (int m = 3; m <= 9; ++m) {
    const int cells = 1 << m;
    std::vector<double> part(cells + 1);
    for (int i = 0; i <= cells; ++i) part[i] = static_cast<double>(i) / cells;
    hs.push_back(1.0 / cells);
    ds.push_back(riemann_sum_defect(a, A, part));
  }
  rep.add(check_ge("riemann_defect_order", harness::order_fit(hs, ds), 0.95));

  Json tbl = Json::array();
  for (std::size_t i = 0; i < hs.size(); ++i)
    tbl.push_back({{"mesh", hs[i]}, {"defect", ds[i]}});
  rep.results["riemann_defects"] = std::move(tbl);
  return rep;
}

Report run_lift(const ExperimentConfig& cfg) {
  Report rep;
  rep.config = cfg.doc();
  auto rp = make_lift(cfg.gets("path"), static_cast<std::size_t>(cfg.geti("time_m")),
                      cfg.geti("ell"), cfg.getd("horizon"), cfg.getd("gamma"),
                      cfg.seed());
  const double chen = chen_defect(rp);
  const double geo = geometricity_defect(rp);
  rep.add(check_le("chen_defect", chen, 1e-12));
  rep.add(check_le("geometricity_defect", geo, 1e-12));
  rep.results["chen_defect"] = chen;
  rep.results["geometricity_defect"] = geo;

  std::ostringstream os;
  write_base_path_csv(rp.base(), os);
  rep.csv["base_path.csv"] = os.str();
  return rep;
}

Report run_integrate_matrix(const ExperimentConfig& cfg) {
  Report rep;
  rep.config = cfg.doc();
  const auto& d = driver_library(cfg.gets("driver"));
  const int refine = cfg.geti("refine");
  Eigen::VectorXd f0 = Eigen::VectorXd::Ones(d.size());
  const std::string scheme = cfg.gets("scheme");

  rep.results["driver_norm"] = d.norm();
  rep.results["driver_chen_defect"] = d.chen_defect();
  rep.add(check_le("driver_chen_defect", d.chen_defect(), 1e-10));

  if (scheme == "euler" || scheme == "picard") {
    auto eu = euler_integrate(d, f0, refine_uniform(d.grid(), refine));
    auto gb = growth_bound_check(d, f0, refine);
    rep.results["growth_lambda"] = gb.lambda_used;
    rep.results["growth_ratio"] = gb.passed ? gb.ratio : gb.min_ratio;
    rep.add(check_le("growth_bound_ratio", gb.passed ? gb.ratio : gb.min_ratio, 2.0));
    if (scheme == "picard") {
      auto pi = picard_integrate(d, f0, cfg.geti("iters"), refine);
      double gap = 0.0;
      for (std::size_t i = 0; i < pi.path.grid.size(); ++i) {
        const double t = pi.path.grid.node(i);
        gap = std::max(gap, (pi.path.values[i] -
                             eu.path.values[eu.path.grid.index_of(t)])
                                .norm());
      }
      rep.add(check_le("picard_euler_gap", gap, 1e-6));
      rep.results["picard_increment_norms"] = pi.increment_norms;
      rep.results["picard_lambda"] = pi.lambda;
    }
  } else if (scheme == "drift") {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(d.size(), d.size());
    for (int i = 0; i < d.size(); ++i)
      for (int j = 0; j < d.size(); ++j)
        b(i, j) = 0.1 * static_cast<double>(i + 1) - 0.15 * static_cast<double>(j);
    auto bpath = sample_path<Eigen::MatrixXd>(d.grid(), [&](double) { return b; });
    std::vector<double> hs, errs;
    auto zero_rule = [n = d.size()](double, double) {
      return Eigen::MatrixXd::Zero(n, n);
    };
    BoundedDriver d0(d.grid(), zero_rule, zero_rule, 0.5, d.size());
    for (int r : {1, 2, 4, 8}) {
      auto sol = integrate_with_drift(d0, bpath, f0,
                                      refine_uniform(d.grid(), refine * r));
      hs.push_back(1.0 / (static_cast<double>(d.grid().intervals()) * refine * r));
      errs.push_back((sol.path.values.back() - harness::expm(b) * f0).norm());
    }
    rep.add(check_ge("drift_expm_order", harness::order_fit(hs, errs), 0.9));
  } else {
    throw ConfigError("config.scheme: unknown scheme '" + scheme + "'");
  }
  return rep;
}

Report run_lyons(const ExperimentConfig& cfg) {
  Report rep;
  rep.config = cfg.doc();
  const auto& d = driver_library(cfg.gets("driver"));
  auto series = lyons_series(d, cfg.geti("n_max"), cfg.geti("levels"));

  double worst_ratio = 0.0;
  for (std::size_t n = 2; n + 1 < series.level_norms.size(); ++n)
    worst_ratio = std::max(
        worst_ratio, series.level_norms[n + 1] / series.level_norms[n]);
  rep.add(check_le("level_norm_decay_ratio", worst_ratio, 1.0 + 1e-9));
  rep.results["level_norms"] = series.level_norms;
  rep.results["truncation_error"] = series.truncation_error;

  const double fd = flow_defect(series.exp_map);
  rep.add(check_le("flow_defect", fd, 1e-6));
  rep.results["flow_defect"] = fd;

  Eigen::VectorXd f0 = Eigen::VectorXd::Ones(d.size());
  auto eu = euler_integrate(d, f0, refine_uniform(d.grid(), 64));
  const double gap =
      (series.exp_map.at(0, d.grid().size() - 1) * f0 - eu.path.values.back())
          .norm();
  rep.add(check_le("series_euler_gap", gap, 1e-6));
  return rep;
}

Report run_transport(const ExperimentConfig& cfg) {
  Report rep;
  rep.config = cfg.doc();
  const auto& field = field_library(cfg.gets("field"));
  const auto& datum = initial_datum(cfg.gets("datum"));
  const double gamma = cfg.getd("gamma");
  auto rp = make_lift(cfg.gets("path"), static_cast<std::size_t>(cfg.geti("time_m")),
                      field.ell(), 1.0, gamma, cfg.seed());
  TorusGrid space(field.dim, cfg.geti("n"));
  auto times = TimeGrid::uniform(1.0, static_cast<std::size_t>(cfg.geti("snapshots")));

  auto sol = transport_solve(field, rp, datum, times, space, cfg.geti("substeps"));

  auto mp = maximum_principle_report(sol);
  rep.add(check_le("max_principle_drift", mp.max_drift, 1e-12));
  rep.results["sup_reference"] = mp.sup_reference;

  if (field.divergence_free) {
    auto cons = conservation_report(sol);
    rep.add(check_le("conservation_drift", cons.max_drift, 1e-3));
    rep.results["conservation_drift"] = cons.drift;
    rep.results["conservation_zero_norm"] = cons.zero_norm;
  }

  auto phi_ids = cfg.getvs("test_functions");
  std::vector<TestFunction> bank;
  if (phi_ids.empty())
    bank = default_test_bank(field.dim);
  else
    for (const auto& id : phi_ids) bank.push_back(test_function(id));

  const int m_min = cfg.geti("m_min"), m_max = cfg.geti("m_max");
  auto res = weak_residuals(sol, bank, m_min, m_max);
  Json reports = Json::array();
  for (const auto& s : res.per_phi) {
    if (s.df_report) {
      reports.push_back(holder_report_json(s.phi_id, gamma, *s.df_report));
      rep.add(check_ge("df_slope_" + s.phi_id, s.df_report->slope, gamma - 0.1));
    }
    if (s.flat_report) {
      reports.push_back(holder_report_json(s.phi_id, 2 * gamma, *s.flat_report));
      rep.add(check_ge("flat_slope_" + s.phi_id, s.flat_report->slope,
                       2 * gamma - 0.1));
    }
    if (s.sharp_report) {
      reports.push_back(holder_report_json(s.phi_id, 3 * gamma, *s.sharp_report));
      rep.add(check_ge("sharp_slope_" + s.phi_id, s.sharp_report->slope,
                       3 * gamma - 0.1));
    }
  }
  rep.results["holder_reports"] = std::move(reports);

  for (const auto& hid : cfg.getvs("renormalize")) {
    auto hsol = transform_solution(sol, renorm_function(hid));
    auto hres = weak_residuals(hsol, bank, m_min, m_max);
    for (const auto& s : hres.per_phi)
      if (s.sharp_report)
        rep.add(check_ge("renorm_" + hid + "_sharp_slope_" + s.phi_id,
                         s.sharp_report->slope, 3 * gamma - 0.1));
  }

  rep.csv["snapshot_first.csv"] = snapshot_csv(sol.snapshots.front());
  rep.csv["snapshot_last.csv"] = snapshot_csv(sol.snapshots.back());
  {
    // residual tables for the first test function
    std::ostringstream os;
    os << "s,t,df,flat,sharp\n";
    const auto& s0 = res.per_phi.front();
    for (std::size_t j = 1; j < times.size(); ++j)
      for (std::size_t i = 0; i < j; ++i)
        os << io::format_double(times.node(i)) << ","
           << io::format_double(times.node(j)) << ","
           << io::format_double(s0.df.at(i, j)) << ","
           << io::format_double(s0.flat.at(i, j)) << ","
           << io::format_double(s0.sharp.at(i, j)) << "\n";
    rep.csv["residuals_" + s0.phi_id + ".csv"] = os.str();
  }
  return rep;
}

Report run_smoothing(const ExperimentConfig& cfg) {
  Report rep;
  rep.config = cfg.doc();
  TorusGrid g(2, cfg.geti("n"));
  auto sweep = smoothing_estimate_sweep(g, cfg.geti("j0"), cfg.geti("eps_pow_min"),
                                        cfg.geti("eps_pow_max"), cfg.geti("modes"));
  rep.add(check_le("approx_estimate_constant", sweep.worst_c_approx, 6.0));
  rep.add(check_le("bound_estimate_constant", sweep.worst_c_bound, 1.0 + 1e-9));
  std::ostringstream os;
  os << "n,k,eps,c_approx,c_bound\n";
  for (const auto& r : sweep.rows)
    os << r.n << "," << r.k << "," << io::format_double(r.eps) << ","
       << io::format_double(r.c_approx) << "," << io::format_double(r.c_bound)
       << "\n";
  rep.csv["smoothing_sweep.csv"] = os.str();
  rep.results["worst_c_approx"] = sweep.worst_c_approx;
  rep.results["worst_c_bound"] = sweep.worst_c_bound;
  return rep;
}

Report run_gronwall(const ExperimentConfig& cfg) {
  Report rep;
  rep.config = cfg.doc();
  const auto& field = field_library(cfg.gets("field"));
  const auto& datum = initial_datum(cfg.gets("datum"));
  const double gamma = cfg.getd("gamma");
  auto rp = make_lift("brownian", static_cast<std::size_t>(cfg.geti("time_m")),
                      field.ell(), 1.0, gamma, cfg.seed());
  TorusGrid space(field.dim, cfg.geti("n"));
  auto times = TimeGrid::uniform(1.0, static_cast<std::size_t>(cfg.geti("snapshots")));
  auto sol = transport_solve(field, rp, datum, times, space, cfg.geti("substeps"));

  const auto route = cfg.gets("route") == "variational"
                         ? GradientRoute::Variational
                         : GradientRoute::Spectral;
  const auto& phi = test_function(cfg.gets("phi"));
  auto r = gronwall_identity_residual(sol, phi, cfg.geti("m_min"),
                                      cfg.geti("m_max"), route);
  if (r.report) {
    rep.add(check_ge("gronwall_slope", r.report->slope, 3 * gamma - 0.1));
    rep.results["holder_report"] =
        holder_report_json(phi.id, 3 * gamma, *r.report);
  } else {
    rep.results["holder_report"] = nullptr;
  }
  rep.results["resolution_warning"] = r.resolution_warning;
  rep.results["max_tail_fraction"] = r.max_tail_fraction;

  if (phi.id == "one2d" && field.divergence_free) {
    // the identity collapses onto the L^2 conservation statement
    const double n0 = l2_norm(sol.snapshots.front());
    double gap = 0.0;
    for (std::size_t k = 1; k < times.size(); ++k) {
      const double nk = l2_norm(sol.snapshots[k]);
      gap = std::max(gap, std::fabs(r.residual.at(0, k) - (nk * nk - n0 * n0)));
    }
    rep.add(check_le("reduction_to_conservation_gap", gap, 1e-9));
  }
  return rep;
}

Report run_stability(const ExperimentConfig& cfg) {
  Report rep;
  rep.config = cfg.doc();
  const auto& field = field_library(cfg.gets("field"));
  const auto& datum = initial_datum(cfg.gets("datum"));
  TorusGrid space(field.dim, cfg.geti("n"));
  auto times = TimeGrid::uniform(cfg.getd("horizon"),
                                 static_cast<std::size_t>(cfg.geti("snapshots")));
  auto tbl = stability_sweep(field, cfg.seed(), cfg.getvi("levels"), datum,
                             cfg.getd("horizon"), times, space,
                             cfg.geti("substeps"));
  double worst_ratio = 0.0;
  for (std::size_t i = 0; i + 1 < tbl.consecutive.size(); ++i)
    worst_ratio = std::max(worst_ratio, tbl.consecutive[i + 1] / tbl.consecutive[i]);
  rep.add(check_le("consecutive_distance_ratio", worst_ratio, 1.0 - 1e-12));
  rep.results["levels"] = tbl.levels;
  rep.results["consecutive_distances"] = tbl.consecutive;

  std::ostringstream os;
  os << "level_a,level_b,distance\n";
  for (std::size_t a = 0; a < tbl.levels.size(); ++a)
    for (std::size_t b = a + 1; b < tbl.levels.size(); ++b)
      os << tbl.levels[a] << "," << tbl.levels[b] << ","
         << io::format_double(tbl.dist[a][b]) << "\n";
  rep.csv["stability_distances.csv"] = os.str();
  return rep;
}

}  // namespace

Report run_experiment(const ExperimentConfig& cfg) {
  const std::string kind = cfg.kind();
  if (kind == "sew-demo") return run_sew_demo(cfg);
  if (kind == "lift") return run_lift(cfg);
  if (kind == "integrate-matrix") return run_integrate_matrix(cfg);
  if (kind == "lyons-series") return run_lyons(cfg);
  if (kind == "transport") return run_transport(cfg);
  if (kind == "smoothing-check") return run_smoothing(cfg);
  if (kind == "gronwall") return run_gronwall(cfg);
  if (kind == "stability") return run_stability(cfg);
  throw ConfigError("config.kind: unknown kind '" + kind + "'");
}

}  // namespace rd
