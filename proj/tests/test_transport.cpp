#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "roughdrive/field/spectral.hpp"
#include "roughdrive/roughpath/brownian.hpp"
#include "roughdrive/transport/invariants.hpp"
#include "roughdrive/transport/residuals.hpp"
#include "roughdrive/transport/solver.hpp"

using namespace rd;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Level2RoughPath line_lift(std::size_t m, int ell = 1) {
  auto grid = TimeGrid::uniform(1.0, m);
  std::vector<Eigen::VectorXd> s;
  for (double t : grid.nodes()) {
    Eigen::VectorXd x(ell);
    for (int j = 0; j < ell; ++j) x[j] = t;
    s.push_back(x);
  }
  return Level2RoughPath::lift_piecewise_linear(
      make_base_path(std::move(grid), std::move(s)), 1.0);
}

Level2RoughPath zero_lift(std::size_t m, int ell = 1) {
  auto grid = TimeGrid::uniform(1.0, m);
  std::vector<Eigen::VectorXd> s(grid.size(), Eigen::VectorXd::Zero(ell));
  return Level2RoughPath::lift_piecewise_linear(
      make_base_path(std::move(grid), std::move(s)), 1.0);
}

double wrap_dist(double a, double b) {
  double d = std::fabs(a - b);
  return std::min(d, kTwoPi - d);
}

}  // namespace

TEST_CASE("characteristics closed forms") {
  TorusGrid g1(1, 64);
  auto line = line_lift(64);

  // constant field, X_t = t: y(0) = x + t
  auto feet = characteristics_solve(field_library("const1d"), line, 1.0, g1, 64);
  for (int i = 0; i < g1.n; ++i) {
    const double expect = std::fmod(g1.coord(i) + 1.0, kTwoPi);
    CHECK(wrap_dist(feet.y1[i], expect) <= 1e-10);
  }

  // shear field: y(0) = (x1 + t sin x2, x2), exact for the scheme
  TorusGrid g2(2, 32);
  auto line2 = line_lift(64, 1);
  auto feet2 = characteristics_solve(field_library("shear"), line2, 1.0, g2, 128);
  std::size_t idx = 0;
  for (int i1 = 0; i1 < g2.n; ++i1)
    for (int i2 = 0; i2 < g2.n; ++i2, ++idx) {
      const double expect =
          std::fmod(g2.coord(i1) + std::sin(g2.coord(i2)) + kTwoPi, kTwoPi);
      CHECK(wrap_dist(feet2.y1[idx], expect) <= 1e-9);
      CHECK(feet2.y2[idx] == doctest::Approx(g2.coord(i2)).epsilon(1e-12));
    }

  // zero rough path: identity
  auto feet0 = characteristics_solve(field_library("shear"), zero_lift(16), 1.0,
                                     g2, 16);
  idx = 0;
  for (int i1 = 0; i1 < g2.n; ++i1)
    for (int i2 = 0; i2 < g2.n; ++i2, ++idx) {
      CHECK(feet0.y1[idx] == doctest::Approx(g2.coord(i1)));
      CHECK(feet0.y2[idx] == doctest::Approx(g2.coord(i2)));
    }

  // one giant step blows past half the domain
  CHECK_THROWS_AS(
      characteristics_solve(field_library("const1d"),
                            Level2RoughPath::lift_piecewise_linear(
                                [] {
                                  auto grid = TimeGrid::uniform(1.0, 2);
                                  std::vector<Eigen::VectorXd> s;
                                  for (double t : grid.nodes()) {
                                    Eigen::VectorXd x(1);
                                    x << 10.0 * t;
                                    s.push_back(x);
                                  }
                                  return make_base_path(grid, std::move(s));
                                }(),
                                1.0),
                            1.0, g1, 1),
      StepSizeError);

  // dimension and regularity guards
  CHECK_THROWS_AS(
      characteristics_solve(field_library("shear"), line_lift(16, 2), 1.0, g2, 8),
      Error);
}

TEST_CASE("backend equivalence of the characteristic solve") {
  if (!kernels::backend_available(kernels::Backend::Avx2)) return;
  TorusGrid g(2, 32);
  auto rp = Level2RoughPath::lift_piecewise_linear(
      sample_brownian_pl(3, 1.0, 256, 2), 0.4);
  const auto& field = field_library("twofield");
  auto fa = characteristics_solve(field, rp, 1.0, g, 256, kernels::Backend::Scalar);
  auto fb = characteristics_solve(field, rp, 1.0, g, 256, kernels::Backend::Avx2);
  double worst = 0.0;
  for (std::size_t p = 0; p < g.points(); ++p) {
    worst = std::max(worst, wrap_dist(fa.y1[p], fb.y1[p]));
    worst = std::max(worst, wrap_dist(fa.y2[p], fb.y2[p]));
  }
  CHECK(worst <= 1e-11);

  // the generic closure path agrees with the specialized kernel
  VectorFieldSet generic = field;
  generic.kernel = kernels::FieldKernelId::None;
  auto fc = characteristics_solve(generic, rp, 1.0, g, 256, kernels::Backend::Scalar);
  worst = 0.0;
  for (std::size_t p = 0; p < g.points(); ++p)
    worst = std::max(worst, wrap_dist(fa.y1[p], fc.y1[p]) + wrap_dist(fa.y2[p], fc.y2[p]));
  CHECK(worst <= 1e-11);
}

TEST_CASE("transport closed forms") {
  TorusGrid g(2, 64);
  auto times = TimeGrid::uniform(1.0, 8);

  // constant field: translation of the datum
  {
    auto sol = transport_solve(field_library("const2d"), line_lift(64),
                               initial_datum("mix"), times, g, 512);
    const auto& d = initial_datum("mix");
    for (std::size_t k = 0; k < times.size(); ++k) {
      const double t = times.node(k);
      double worst = 0.0;
      std::size_t idx = 0;
      for (int i1 = 0; i1 < g.n; ++i1)
        for (int i2 = 0; i2 < g.n; ++i2, ++idx) {
          const double expect = d.value(g.coord(i1) + 0.8 * t, g.coord(i2) - 0.45 * t);
          worst = std::max(worst, std::fabs(sol.snapshots[k].values[idx] - expect));
        }
      CHECK(worst <= 1e-9);
    }
  }

  // shear field with a smooth path: f_t(x) = f0(x1 + X_{t0} sin x2, x2)
  {
    auto sol = transport_solve(field_library("shear"), line_lift(1024),
                               initial_datum("bump"), times, g, 1024);
    const auto& d = initial_datum("bump");
    double worst = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
      const double t = times.node(k);
      std::size_t idx = 0;
      for (int i1 = 0; i1 < g.n; ++i1)
        for (int i2 = 0; i2 < g.n; ++i2, ++idx) {
          const double expect =
              d.value(g.coord(i1) + t * std::sin(g.coord(i2)), g.coord(i2));
          worst = std::max(worst, std::fabs(sol.snapshots[k].values[idx] - expect));
        }
    }
    CHECK(worst <= 1e-6);
  }

  // constants are solutions for any field and path
  {
    auto rp = Level2RoughPath::lift_piecewise_linear(
        sample_brownian_pl(9, 1.0, 256, 2), 0.4);
    auto sol = transport_solve(field_library("twofield"), rp,
                               initial_datum("one"), times, g, 256);
    for (const auto& snap : sol.snapshots)
      for (double v : snap.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
  }

  // solutions are linear in the datum (characteristics are datum-free)
  {
    auto rp = Level2RoughPath::lift_piecewise_linear(
        sample_brownian_pl(11, 1.0, 256, 1), 0.4);
    const auto& da = initial_datum("sin1");
    const auto& db = initial_datum("bump");
    InitialDatum combo;
    combo.id = "combo";
    combo.dim = 2;
    for (auto t : da.terms) {
      t.coef *= 1.75;
      combo.terms.push_back(t);
    }
    for (auto t : db.terms) {
      t.coef *= -0.6;
      combo.terms.push_back(t);
    }
    combo.sup_abs = 1.75 + 0.6;  // safe upper bound
    auto sa = transport_solve(field_library("shear"), rp, da, times, g, 128);
    auto sb = transport_solve(field_library("shear"), rp, db, times, g, 128);
    auto sc = transport_solve(field_library("shear"), rp, combo, times, g, 128);
    double worst = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k)
      for (std::size_t p = 0; p < g.points(); ++p)
        worst = std::max(worst,
                         std::fabs(sc.snapshots[k].values[p] -
                                   1.75 * sa.snapshots[k].values[p] +
                                   0.6 * sb.snapshots[k].values[p]));
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("weak residuals") {
  TorusGrid g(2, 64);
  auto times = TimeGrid::uniform(1.0, 64);

  // zero rough path: everything vanishes
  {
    auto sol = transport_solve(field_library("shear"), zero_lift(64),
                               initial_datum("mix"), times, g, 64);
    auto res = weak_residuals(sol, default_test_bank(2), 1, 5);
    for (const auto& s : res.per_phi) {
      CHECK(!s.sharp_report.has_value());
      double worst = 0.0;
      for (std::size_t j = 1; j < times.size(); ++j)
        for (std::size_t i = 0; i < j; ++i)
          worst = std::max(worst, std::fabs(s.sharp.at(i, j)));
      CHECK(worst <= 1e-12);
    }
  }

  // smooth path, constant field: the remainder ladder is fully smooth
  {
    auto sol = transport_solve(field_library("const2d"), line_lift(1024),
                               initial_datum("mix"), times, g, 512);
    auto res = weak_residuals(sol, {test_function("sincos")}, 1, 4);
    REQUIRE(res.per_phi[0].sharp_report.has_value());
    CHECK(res.per_phi[0].sharp_report->slope >= 2.9);
    REQUIRE(res.per_phi[0].flat_report.has_value());
    CHECK(res.per_phi[0].flat_report->slope >= 1.9);
  }

  // Brownian shear: the gamma / 2 gamma / 3 gamma exponent ladder
  {
    auto rp = Level2RoughPath::lift_piecewise_linear(
        sample_brownian_pl(21, 1.0, 1024, 1), 0.4);
    auto sol = transport_solve(field_library("shear"), rp,
                               initial_datum("bump"), times, g, 1024);
    auto res = weak_residuals(sol, {test_function("sincos")}, 2, 5);
    const double gamma = 0.4;
    REQUIRE(res.per_phi[0].df_report.has_value());
    REQUIRE(res.per_phi[0].flat_report.has_value());
    REQUIRE(res.per_phi[0].sharp_report.has_value());
    CHECK(res.per_phi[0].df_report->slope >= gamma - 0.1);
    CHECK(res.per_phi[0].flat_report->slope >= 2.0 * gamma - 0.1);
    CHECK(res.per_phi[0].sharp_report->slope >= 3.0 * gamma - 0.1);
  }
}

TEST_CASE("conservation") {
  TorusGrid g(2, 64);
  auto times = TimeGrid::uniform(1.0, 8);

  auto sol = transport_solve(field_library("const2d"), line_lift(64),
                             initial_datum("mix"), times, g, 64);
  auto rep = conservation_report(sol);
  CHECK(rep.max_drift <= 1e-12);

  // non-divergence-free fields are refused
  auto solc = transport_solve(field_library("compress"), line_lift(64),
                              initial_datum("mix"), times, g, 64);
  CHECK_THROWS_AS(conservation_report(solc), Error);

  // zero datum: flagged, drift reported as zero
  InitialDatum zero;
  zero.id = "zero";
  zero.dim = 2;
  zero.terms = {{0.0, fn_const(0.0), fn_const(0.0)}};
  zero.sup_abs = 0.0;
  auto solz = transport_solve(field_library("shear"), line_lift(64), zero,
                              times, g, 64);
  auto repz = conservation_report(solz);
  CHECK(repz.zero_norm);
  CHECK(repz.max_drift == 0.0);
}

TEST_CASE("maximum principle") {
  TorusGrid g(2, 64);
  auto times = TimeGrid::uniform(1.0, 8);
  auto rp = Level2RoughPath::lift_piecewise_linear(
      sample_brownian_pl(5, 1.0, 512, 2), 0.4);

  auto sol = transport_solve(field_library("twofield"), rp,
                             initial_datum("sin1"), times, g, 512);
  auto rep = maximum_principle_report(sol);
  CHECK(rep.sup_reference == doctest::Approx(1.0));
  CHECK(rep.max_drift <= 1e-12);
  for (const auto& snap : sol.snapshots) CHECK(max_abs(snap) <= 1.0 + 1e-12);

  // negative control: cubic interpolation of a steep-edged datum
  // overshoots the analytic sup (plateaus at 1 with sharp transitions)
  TorusGrid gc(2, 32);
  Fn1 edge;
  const double kk = 10.0, tk = std::tanh(kk);
  edge.f = [=](double x) { return std::tanh(kk * std::cos(x)) / tk; };
  edge.d1 = [=](double x) {
    const double u = kk * std::cos(x);
    const double sech = 1.0 / std::cosh(u);
    return -kk * std::sin(x) * sech * sech / tk;
  };
  edge.d2 = edge.d3 = [](double) { return 0.0; };  // unused by the solver
  InitialDatum osc;
  osc.id = "edge";
  osc.dim = 2;
  osc.terms = {{1.0, edge, fn_const(1.0)}};
  osc.sup_abs = 1.0;
  auto rp1 = Level2RoughPath::lift_piecewise_linear(
      sample_brownian_pl(6, 1.0, 512, 1), 0.4);
  auto solc = transport_solve(field_library("shear"), rp1, osc, times, gc, 256);
  CHECK(maximum_principle_report(solc).max_drift <= 1e-12);
  CHECK(interpolated_variant_max_drift(solc) > 0.0);
}

TEST_CASE("renormalization") {
  TorusGrid g(2, 64);
  auto times = TimeGrid::uniform(1.0, 64);
  auto sol = transport_solve(field_library("const2d"), line_lift(1024),
                             initial_datum("mix"), times, g, 512);

  // identity map: residuals unchanged
  auto same = transform_solution(sol, [](double u) { return u; });
  auto r1 = weak_residuals(sol, {test_function("sincos")}, 1, 4);
  auto r2 = weak_residuals(same, {test_function("sincos")}, 1, 4);
  for (std::size_t j = 1; j < times.size(); j += 7)
    for (std::size_t i = 0; i < j; i += 5)
      CHECK(r1.per_phi[0].sharp.at(i, j) == r2.per_phi[0].sharp.at(i, j));

  // constant maps solve the equation with vanishing residuals
  auto consts = transform_solution(sol, [](double) { return 0.7; });
  auto rc = weak_residuals(consts, default_test_bank(2), 1, 4);
  for (const auto& s : rc.per_phi) {
    double worst = 0.0;
    for (std::size_t j = 1; j < times.size(); ++j)
      for (std::size_t i = 0; i < j; ++i)
        worst = std::max(worst, std::fabs(s.sharp.at(i, j)));
    CHECK(worst <= 1e-10);
  }

  // H = x^2 on the smooth solve keeps the smooth remainder ladder
  auto sq = transform_solution(sol, renorm_function("square"));
  auto rs = weak_residuals(sq, {test_function("sincos")}, 2, 5);
  REQUIRE(rs.per_phi[0].sharp_report.has_value());
  CHECK(rs.per_phi[0].sharp_report->slope >= 2.9);
}

TEST_CASE("gronwall identity") {
  TorusGrid g(2, 64);
  auto times = TimeGrid::uniform(1.0, 64);

  // zero path: residual vanishes
  {
    auto sol = transport_solve(field_library("shear"), zero_lift(64),
                               initial_datum("mix"), times, g, 64);
    auto r = gronwall_identity_residual(sol, test_function("sincos"), 1, 5);
    double worst = 0.0;
    for (std::size_t j = 1; j < times.size(); ++j)
      for (std::size_t i = 0; i < j; ++i)
        worst = std::max(worst, std::fabs(r.residual.at(i, j)));
    CHECK(worst <= 1e-10);
  }

  // smooth path, constant field: 3-smooth residual
  {
    auto sol = transport_solve(field_library("const2d"), line_lift(1024),
                               initial_datum("mix"), times, g, 512);
    auto r = gronwall_identity_residual(sol, test_function("sincos"), 2, 5);
    REQUIRE(r.report.has_value());
    CHECK(r.report->slope >= 2.9);
    CHECK_FALSE(r.resolution_warning);
  }

  // divergence-free field, phi = 1: the identity reduces to L^2
  // conservation
  {
    auto rp = Level2RoughPath::lift_piecewise_linear(
        sample_brownian_pl(31, 1.0, 1024, 1), 0.4);
    auto sol = transport_solve(field_library("shear"), rp,
                               initial_datum("bump"), times, g, 1024);
    auto r = gronwall_identity_residual(sol, test_function("one2d"), 2, 5);
    const double n0 = l2_norm(sol.snapshots[0]);
    for (std::size_t k : {std::size_t{16}, std::size_t{48}}) {
      const double nk = l2_norm(sol.snapshots[k]);
      CHECK(r.residual.at(0, k) ==
            doctest::Approx(nk * nk - n0 * n0).epsilon(1e-9));
    }

    // spectral and variational gradient routes agree
    auto times_small = TimeGrid::uniform(1.0, 8);
    auto sols = transport_solve(field_library("shear"), rp,
                                initial_datum("bump"), times_small, g, 256);
    auto ra = gronwall_identity_residual(sols, test_function("sincos"), 1, 3,
                                         GradientRoute::Spectral);
    auto rb = gronwall_identity_residual(sols, test_function("sincos"), 1, 3,
                                         GradientRoute::Variational);
    double scale = 0.0, diff = 0.0;
    for (std::size_t j = 1; j < times_small.size(); ++j)
      for (std::size_t i = 0; i < j; ++i) {
        scale = std::max(scale, std::fabs(ra.residual.at(i, j)));
        diff = std::max(diff, std::fabs(ra.residual.at(i, j) - rb.residual.at(i, j)));
      }
    CHECK(diff <= 0.05 * scale + 1e-9);
  }
}

TEST_CASE("stability sweep") {
  TorusGrid g(2, 32);
  auto times = TimeGrid::uniform(1.0, 8);
  const auto& field = field_library("twofield");

  // a smooth sample is identical across levels: distances are pure
  // characteristic-scheme error
  {
    auto grid = TimeGrid::uniform(1.0, 1 << 8);
    std::vector<Eigen::VectorXd> s;
    for (double t : grid.nodes()) {
      Eigen::VectorXd x(2);
      x << 0.5 * t, -0.25 * t;
      s.push_back(x);
    }
    auto tbl = stability_sweep_from(field, make_base_path(grid, std::move(s)),
                                    {6, 7, 8}, initial_datum("bump"), times, g,
                                    256);
    for (double d : tbl.consecutive) CHECK(d <= 1e-8);
  }

  // Brownian sample: consecutive-level distances decrease
  {
    auto tbl = stability_sweep(field, 12345, {6, 7, 8, 9, 10},
                               initial_datum("bump"), 1.0, times, g, 512);
    for (std::size_t i = 0; i + 1 < tbl.consecutive.size(); ++i)
      CHECK(tbl.consecutive[i + 1] < tbl.consecutive[i]);
  }

  CHECK_THROWS_AS(stability_sweep(field, 1, {8, 7}, initial_datum("bump"), 1.0,
                                  times, g, 64),
                  Error);
}
