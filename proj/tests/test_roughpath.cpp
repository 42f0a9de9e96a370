#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "roughdrive/core/holder.hpp"
#include "roughdrive/roughpath/brownian.hpp"
#include "roughdrive/roughpath/level2.hpp"

using namespace rd;

namespace {

BasePath sampled(double T, std::size_t m,
                 const std::function<Eigen::VectorXd(double)>& f) {
  auto grid = TimeGrid::uniform(T, m);
  std::vector<Eigen::VectorXd> s;
  s.reserve(grid.size());
  for (double t : grid.nodes()) s.push_back(f(t));
  return make_base_path(std::move(grid), std::move(s));
}

}  // namespace

TEST_CASE("scalar lift satisfies XX = X^2/2") {
  auto p = sampled(1.0, 32, [](double t) {
    Eigen::VectorXd v(1);
    v[0] = std::sin(3.0 * t) + t;
    return v;
  });
  auto rp = Level2RoughPath::lift_piecewise_linear(p);
  const auto& g = rp.grid();
  for (std::size_t j = 1; j < g.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) {
      const double x = rp.increment(g.node(i), g.node(j))[0];
      const double xx = rp.iterated(g.node(i), g.node(j))(0, 0);
      CHECK(std::fabs(xx - 0.5 * x * x) <= 1e-12);
    }
}

TEST_CASE("iterated integral of (t, t^2) converges to 2/3") {
  double prev_err = 1e9;
  for (std::size_t m : {64u, 256u, 1024u}) {
    auto p = sampled(1.0, m, [](double t) {
      Eigen::VectorXd v(2);
      v[0] = t;
      v[1] = t * t;
      return v;
    });
    auto rp = Level2RoughPath::lift_piecewise_linear(p);
    const double err = std::fabs(rp.iterated(0.0, 1.0)(0, 1) - 2.0 / 3.0);
    CHECK(err < prev_err);
    prev_err = err;
  }
  CHECK(prev_err <= 1e-5);
}

TEST_CASE("constant path lifts to zero") {
  auto p = sampled(1.0, 8, [](double) {
    Eigen::VectorXd v(2);
    v << 1.25, -0.5;
    return v;
  });
  auto rp = Level2RoughPath::lift_piecewise_linear(p);
  CHECK(rp.increment(0.0, 1.0).norm() == doctest::Approx(0.0));
  CHECK(rp.iterated(0.0, 1.0).norm() == doctest::Approx(0.0));
}

TEST_CASE("chen and geometricity are exact for PL lifts") {
  auto brown = sample_brownian_pl(7, 1.0, 64, 2);
  auto rp = Level2RoughPath::lift_piecewise_linear(std::move(brown), 0.4);
  CHECK(chen_defect(rp) <= 1e-12);
  CHECK(geometricity_defect(rp) <= 1e-12);

  // increments are delta1-consistent with the base samples
  const auto& g = rp.grid();
  for (std::size_t j = 1; j < g.size(); j += 7)
    for (std::size_t i = 0; i < j; i += 5) {
      const Eigen::VectorXd expect =
          rp.base().samples[j] - rp.base().samples[i];
      CHECK((rp.increment(g.node(i), g.node(j)) - expect).norm() <= 1e-14);
    }
}

TEST_CASE("injected second-level fault is detected") {
  auto brown = sample_brownian_pl(11, 1.0, 16, 2);
  auto rp = Level2RoughPath::lift_piecewise_linear(std::move(brown), 0.4);
  const auto& g = rp.grid();
  const double s0 = g.node(3), t0 = g.node(9);

  auto X = [&](double s, double t) { return rp.increment(s, t); };
  auto XXbad = [&](double s, double t) {
    Eigen::MatrixXd m = rp.iterated(s, t);
    if (s == s0 && t == t0) m(0, 1) += 0.1;
    return m;
  };
  CHECK(chen_defect_tables(g, X, XXbad) >= 0.1 - 1e-12);
}

TEST_CASE("Ito-style modification keeps Chen, breaks geometricity") {
  const int ell = 2;
  auto brown = sample_brownian_pl(3, 1.0, 32, ell);
  auto rp = Level2RoughPath::lift_piecewise_linear(std::move(brown), 0.4);
  const auto& g = rp.grid();
  auto X = [&](double s, double t) { return rp.increment(s, t); };
  auto XXito = [&](double s, double t) {
    return Eigen::MatrixXd(rp.iterated(s, t) -
                           0.5 * (t - s) * Eigen::MatrixXd::Identity(ell, ell));
  };
  CHECK(chen_defect_tables(g, X, XXito) <= 1e-12);
  // Sym defect is exactly (t-s)/2 * ||Id||_F, maximal on the full interval
  const double expect = 0.5 * 1.0 * std::sqrt(static_cast<double>(ell));
  CHECK(geometricity_defect_tables(g, X, XXito) ==
        doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("brownian sampling statistics and determinism") {
  const double T = 1.7;
  const int nsamples = 10000;
  Eigen::Vector2d sum = Eigen::Vector2d::Zero(), sumsq = Eigen::Vector2d::Zero();
  for (int s = 0; s < nsamples; ++s) {
    auto p = sample_brownian_pl(static_cast<std::uint64_t>(s), T, 8, 2);
    const Eigen::VectorXd x = p.samples.back();
    sum += x;
    sumsq += x.cwiseProduct(x);
  }
  for (int j = 0; j < 2; ++j) {
    const double mean = sum[j] / nsamples;
    const double var = sumsq[j] / nsamples - mean * mean;
    CHECK(var == doctest::Approx(T).epsilon(0.05));
  }

  auto a = sample_brownian_pl(99, 1.0, 32, 3);
  auto b = sample_brownian_pl(99, 1.0, 32, 3);
  for (std::size_t i = 0; i < a.samples.size(); ++i)
    CHECK((a.samples[i] - b.samples[i]).norm() == 0.0);

  // Hölder exponent of |X| on one sample sits near 1/2
  auto p = sample_brownian_pl(5, 1.0, 1u << 12, 1);
  auto rp = Level2RoughPath::lift_piecewise_linear(std::move(p), 0.4);
  TwoIndexMap<double> absx(rp.grid(), [rp](double s, double t) {
    return std::fabs(rp.increment(s, t)[0]);
  });
  auto rep = estimate_holder_exponent(absx, 3, 10);
  CHECK(rep.slope >= 0.35);
  CHECK(rep.slope <= 0.55);
}

TEST_CASE("time reversal") {
  auto brown = sample_brownian_pl(5, 1.0, 32, 2);
  auto rp = Level2RoughPath::lift_piecewise_linear(std::move(brown), 0.4);
  const double t = rp.grid().node(24);

  auto rev = reverse(rp, t);
  CHECK(rev.grid().horizon() == doctest::Approx(t));
  CHECK(chen_defect(rev) <= 1e-12);

  // full-interval increment flips sign
  CHECK((rev.increment(0.0, t) + rp.increment(0.0, t)).norm() <= 1e-12);

  // reversing twice is the identity on X and XX
  auto twice = reverse(rev, t);
  for (double s : {0.0, t * 0.25, t * 0.5}) {
    for (double u : {t * 0.75, t}) {
      CHECK((twice.increment(s, u) - rp.increment(s, u)).norm() <= 1e-12);
      CHECK((twice.iterated(s, u) - rp.iterated(s, u)).norm() <= 1e-12);
    }
  }

  // scalar geometric identity: reversed XX over the full interval agrees
  auto p1 = sample_brownian_pl(8, 1.0, 16, 1);
  auto rp1 = Level2RoughPath::lift_piecewise_linear(std::move(p1), 0.4);
  auto rev1 = reverse(rp1, 1.0);
  CHECK(rev1.iterated(0.0, 1.0)(0, 0) ==
        doctest::Approx(rp1.iterated(0.0, 1.0)(0, 0)).epsilon(1e-12));

  CHECK_THROWS_AS(reverse(rp, 0.51234), Error);
}

TEST_CASE("base path csv round-trip") {
  auto p = sample_brownian_pl(31, 2.0, 16, 3);
  std::ostringstream os;
  write_base_path_csv(p, os);
  std::istringstream is(os.str());
  auto q = read_base_path_csv(is);
  REQUIRE(q.samples.size() == p.samples.size());
  for (std::size_t i = 0; i < p.samples.size(); ++i) {
    CHECK(q.grid.node(i) == p.grid.node(i));
    for (int j = 0; j < 3; ++j) CHECK(q.samples[i][j] == p.samples[i][j]);
  }
}
