#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "roughdrive/core/rng.hpp"
#include "roughdrive/field/initial_data.hpp"
#include "roughdrive/field/spectral.hpp"
#include "roughdrive/field/test_functions.hpp"
#include "roughdrive/field/vector_fields.hpp"

using namespace rd;

namespace {

constexpr double kPi = std::numbers::pi;

// central-difference oracle for derivative closures
double cdiff(const std::function<double(double)>& f, double x, double h = 1e-5) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace

TEST_CASE("grid construction guards") {
  CHECK_THROWS_AS(TorusGrid(3, 64), Error);
  CHECK_THROWS_AS(TorusGrid(2, 4), Error);
  CHECK_THROWS_AS(TorusGrid(2, 100), Error);
  CHECK_THROWS_AS(TorusGrid(2, 512), Error);
  CHECK(TorusGrid(2, 128).points() == 128u * 128u);
}

TEST_CASE("pairing quadrature") {
  TorusGrid g1(1, 64);
  auto one = sample_grid(g1, [](double, double) { return 1.0; });
  auto sinx = sample_grid(g1, [](double x, double) { return std::sin(x); });
  auto cosx = sample_grid(g1, [](double x, double) { return std::cos(x); });

  CHECK(pairing(one, one) == doctest::Approx(2.0 * kPi).epsilon(1e-13));
  CHECK(pairing(sinx, sinx) == doctest::Approx(kPi).epsilon(1e-13));
  CHECK(std::fabs(pairing(sinx, cosx)) <= 1e-12);

  TorusGrid g2(1, 32);
  auto other = sample_grid(g2, [](double, double) { return 1.0; });
  CHECK_THROWS_AS(pairing(one, other), Error);
}

TEST_CASE("sobolev norms") {
  TorusGrid g(2, 64);
  auto zero = GridFunction::zeros(g);
  CHECK(sobolev_norm(zero, 1) == doctest::Approx(0.0));

  // single mode kappa = (3, 4): W^{1,2}/L^2 ratio is (1+|kappa|^2)^{1/2}
  auto mode = sample_grid(g, [](double x1, double x2) {
    return std::cos(3.0 * x1 + 4.0 * x2);
  });
  const double ratio = sobolev_norm(mode, 1) / sobolev_norm(mode, 0);
  CHECK(ratio == doctest::Approx(std::sqrt(1.0 + 25.0)).epsilon(1e-12));

  GaussianRng rng(3);
  auto f = sample_grid(g, [&](double x1, double x2) {
    return std::sin(x1) + 0.3 * std::cos(2.0 * x1 - x2) + 0.1 * rng.normal();
  });
  CHECK(sobolev_norm(f, 1) >= sobolev_norm(f, 0));
  CHECK(sobolev_norm(f, 0) >= sobolev_norm(f, -1));
  CHECK_THROWS_AS(sobolev_norm(f, 4), Error);

  // Parseval: quadrature L^2 norm matches the spectral side
  CHECK(l2_norm(f) == doctest::Approx(sobolev_norm(f, 0)).epsilon(1e-10));
  CHECK(pairing(f, f) ==
        doctest::Approx(sobolev_norm(f, 0) * sobolev_norm(f, 0)).epsilon(1e-10));
}

TEST_CASE("smoothing operator") {
  TorusGrid g(2, 64);
  auto c = sample_grid(g, [](double, double) { return 0.75; });
  auto jc = smoothing(c, 0.5, 3);
  for (std::size_t i = 0; i < jc.values.size(); ++i)
    CHECK(jc.values[i] == doctest::Approx(0.75).epsilon(1e-13));

  auto mode = sample_grid(g, [](double x1, double x2) {
    return std::sin(2.0 * x1 + x2);
  });
  const double eps = 0.25;
  const double expect = std::pow(1.0 + eps * 5.0, -3.0);
  auto jm = smoothing(mode, eps, 3);
  for (std::size_t i = 0; i < jm.values.size(); ++i)
    CHECK(jm.values[i] == doctest::Approx(expect * mode.values[i]).epsilon(1e-10));

  // multiplier never exceeds one
  CHECK(sobolev_norm(jm, 2) <= sobolev_norm(mode, 2) * (1.0 + 1e-12));

  CHECK_THROWS_AS(smoothing(mode, 0.0, 3), Error);
  CHECK_THROWS_AS(smoothing(mode, 2.0, 3), Error);
  CHECK_THROWS_AS(smoothing(mode, 0.5, 0), Error);
}

TEST_CASE("smoothing estimates are eps-uniform at the sharp exponents") {
  TorusGrid g(2, 128);
  auto sweep = smoothing_estimate_sweep(g, 3, 1, 8, 64);
  CHECK(sweep.worst_c_approx <= 6.0);
  CHECK(sweep.worst_c_bound <= 1.0 + 1e-9);
  CHECK(sweep.rows.size() >= 10u);
}

TEST_CASE("spectral derivative") {
  TorusGrid g(1, 64);
  auto sinx = sample_grid(g, [](double x, double) { return std::sin(x); });
  auto d = spectral_derivative(sinx, 0);
  for (int i = 0; i < g.n; ++i)
    CHECK(d.values[i] == doctest::Approx(std::cos(g.coord(i))).epsilon(1e-12));

  auto c = sample_grid(g, [](double, double) { return 2.0; });
  CHECK(max_abs(spectral_derivative(c, 0)) <= 1e-12);

  // band-limited random trig polynomial matches its analytic closure
  TorusGrid g2(2, 64);
  GaussianRng rng(17);
  const double a = rng.normal(), b = rng.normal(), c2 = rng.normal();
  auto f = sample_grid(g2, [&](double x1, double x2) {
    return a * std::sin(x1) + b * std::cos(3.0 * x1 + 2.0 * x2) + c2 * std::sin(5.0 * x2);
  });
  auto fx = spectral_derivative(f, 0);
  auto exact = sample_grid(g2, [&](double x1, double x2) {
    return a * std::cos(x1) - 3.0 * b * std::sin(3.0 * x1 + 2.0 * x2);
  });
  for (std::size_t i = 0; i < fx.values.size(); ++i)
    CHECK(fx.values[i] == doctest::Approx(exact.values[i]).epsilon(1e-10));

  CHECK(spectral_tail_fraction(f) <= 1e-20);
}

TEST_CASE("field library closures match finite differences") {
  TorusGrid g(2, 32);
  for (const auto& id : field_library_ids()) {
    const auto& set = field_library(id);
    for (const auto& V : set.fields) {
      for (int i1 = 0; i1 < g.n; i1 += 5)
        for (int i2 = 0; i2 < g.n; i2 += 7) {
          const double x1 = g.coord(i1), x2 = g.coord(i2);
          double jac[4];
          V.jacobian(x1, x2, jac);
          CHECK(jac[0] == doctest::Approx(cdiff([&](double u) {
                  return V.value(u, x2).x;
                }, x1)).epsilon(1e-7));
          CHECK(jac[1] == doctest::Approx(cdiff([&](double u) {
                  return V.value(x1, u).x;
                }, x2)).epsilon(1e-7));
          CHECK(jac[2] == doctest::Approx(cdiff([&](double u) {
                  return V.value(u, x2).y;
                }, x1)).epsilon(1e-7));
          // divergence closure consistent with the jacobian
          CHECK(V.divergence(x1, x2) ==
                doctest::Approx(jac[0] + jac[3]).epsilon(1e-12));
        }
    }
    if (set.divergence_free) CHECK(divergence_residual(set, g) <= 1e-12);
  }
}

TEST_CASE("adjoint actions") {
  TorusGrid g(2, 64);
  const auto& shear = field_library("shear").fields[0];
  const auto& phi = test_function("sincos");

  // divergence-free: V* phi = -V phi pointwise
  auto vphi = apply_V(shear, phi, g);
  auto vsphi = apply_Vstar(shear, phi, g);
  for (std::size_t i = 0; i < vphi.values.size(); ++i)
    CHECK(vsphi.values[i] == doctest::Approx(-vphi.values[i]).epsilon(1e-12));

  // 1-d: v = sin x, phi = 1: V* phi = -cos x
  TorusGrid g1(1, 64);
  const auto& sin1d = field_library("sin1d").fields[0];
  auto vs1 = apply_Vstar(sin1d, test_function("one1d"), g1);
  for (int i = 0; i < g1.n; ++i)
    CHECK(vs1.values[i] == doctest::Approx(-std::cos(g1.coord(i))).epsilon(1e-12));

  // integration by parts: <V phi, psi> + <phi, V psi> + <div v phi, psi> = 0
  const auto& comp = field_library("compress").fields[0];
  const auto& psi = test_function("sin_x1");
  auto vphi2 = apply_V(comp, phi, g);
  auto vpsi2 = apply_V(comp, psi, g);
  auto phig = sample_grid(g, [&](double a, double b) { return phi.value(a, b); });
  auto psig = sample_grid(g, [&](double a, double b) { return psi.value(a, b); });
  auto divphi = sample_grid(g, [&](double a, double b) {
    return comp.divergence(a, b) * phi.value(a, b);
  });
  const double resid =
      pairing(vphi2, psig) + pairing(phig, vpsi2) + pairing(divphi, psig);
  CHECK(std::fabs(resid) <= 1e-10);
}

TEST_CASE("conservative algebra over the bank") {
  // for divergence-free fields, <V phi, psi> + <phi, V psi> = 0
  TorusGrid g(2, 64);
  for (const std::string fid : {"shear", "twofield", "const2d"}) {
    const auto& set = field_library(fid);
    REQUIRE(set.divergence_free);
    auto bank = default_test_bank(2);
    for (const auto& V : set.fields)
      for (const auto& phi : bank)
        for (const auto& psi : bank) {
          auto vphi = apply_V(V, phi, g);
          auto vpsi = apply_V(V, psi, g);
          auto phig =
              sample_grid(g, [&](double a, double b) { return phi.value(a, b); });
          auto psig =
              sample_grid(g, [&](double a, double b) { return psi.value(a, b); });
          CHECK(std::fabs(pairing(vphi, psig) + pairing(phig, vpsi)) <= 1e-10);
        }
  }
}

TEST_CASE("nested adjoint matches the expanded same-field formula") {
  // V*V* phi = V(V phi) + (V div v) phi + 2 div v (V phi) + (div v)^2 phi
  TorusGrid g(2, 64);
  const auto& V = field_library("compress").fields[0];
  const auto& phi = test_function("sincos");

  auto nested = apply_VstarVstar(V, V, phi, g);
  auto expanded = sample_grid(g, [&](double x1, double x2) {
    const Vec2 v = V.value(x1, x2);
    double jac[4];
    V.jacobian(x1, x2, jac);
    const double d = V.divergence(x1, x2);
    const Vec2 gd = V.grad_divergence(x1, x2);
    const Vec2 gp = phi.grad(x1, x2);
    const double p11 = phi.partial(2, 0, x1, x2);
    const double p12 = phi.partial(1, 1, x1, x2);
    const double p22 = phi.partial(0, 2, x1, x2);
    const double vphi = v.x * gp.x + v.y * gp.y;
    // V(V phi) via the product rule
    const double dvphi_1 = jac[0] * gp.x + jac[2] * gp.y + v.x * p11 + v.y * p12;
    const double dvphi_2 = jac[1] * gp.x + jac[3] * gp.y + v.x * p12 + v.y * p22;
    const double vvphi = v.x * dvphi_1 + v.y * dvphi_2;
    const double vdiv = v.x * gd.x + v.y * gd.y;
    return vvphi + vdiv * phi.value(x1, x2) + 2.0 * d * vphi +
           d * d * phi.value(x1, x2);
  });
  for (std::size_t i = 0; i < nested.values.size(); ++i)
    CHECK(nested.values[i] == doctest::Approx(expanded.values[i]).epsilon(1e-11));
}

TEST_CASE("test function closures match finite differences") {
  for (const std::string id : {"sincos", "bump2d"}) {
    const auto& tf = test_function(id);
    CHECK(tf.w3_norm > 0.0);
    for (double x1 : {0.3, 2.0, 5.1})
      for (double x2 : {0.9, 4.2}) {
        CHECK(tf.partial(1, 0, x1, x2) ==
              doctest::Approx(cdiff([&](double u) { return tf.value(u, x2); }, x1))
                  .epsilon(1e-6));
        CHECK(tf.partial(0, 1, x1, x2) ==
              doctest::Approx(cdiff([&](double u) { return tf.value(x1, u); }, x2))
                  .epsilon(1e-6));
        CHECK(tf.partial(2, 1, x1, x2) ==
              doctest::Approx(cdiff([&](double u) { return tf.partial(1, 1, u, x2); },
                                    x1))
                  .epsilon(1e-5));
        CHECK(tf.partial(0, 3, x1, x2) ==
              doctest::Approx(cdiff([&](double u) { return tf.partial(0, 2, x1, u); },
                                    x2))
                  .epsilon(1e-5));
      }
  }
}

TEST_CASE("initial data") {
  for (const auto& id : initial_datum_ids(2)) {
    const auto& d = initial_datum(id);
    TorusGrid g(2, 128);
    auto f = sample_grid(g, [&](double a, double b) { return d.value(a, b); });
    CHECK(max_abs(f) <= d.sup_abs + 1e-12);
    // gradient closure vs finite differences
    CHECK(d.grad(1.1, 2.3).x ==
          doctest::Approx(cdiff([&](double u) { return d.value(u, 2.3); }, 1.1))
              .epsilon(1e-6));
  }
  CHECK_THROWS_AS(initial_datum("nope"), Error);
}

TEST_CASE("grid function csv round-trip") {
  TorusGrid g(2, 16);
  GaussianRng rng(9);
  auto f = sample_grid(g, [&](double, double) { return rng.normal(); });
  std::ostringstream os;
  write_grid_csv(f, os);
  std::istringstream is(os.str());
  auto q = read_grid_csv(is);
  REQUIRE(q.values.size() == f.values.size());
  for (std::size_t i = 0; i < f.values.size(); ++i)
    CHECK(q.values[i] == f.values[i]);
}
