#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "roughdrive/core/rng.hpp"
#include "roughdrive/kernels/field_step.hpp"
#include "roughdrive/kernels/reduce.hpp"

using namespace rd;
namespace k = rd::kernels;

namespace {

std::vector<double> random_vec(std::size_t n, std::uint64_t seed, double lo,
                               double hi) {
  GaussianRng rng(seed);
  std::vector<double> v(n);
  for (auto& x : v) x = lo + (hi - lo) * rng.uniform();
  return v;
}

bool have_avx2() { return k::backend_available(k::Backend::Avx2); }

// reference characteristic step through explicit per-point math
void reference_step(k::FieldKernelId id, const k::FieldKernelParams& par,
                    std::vector<double>& y1, std::vector<double>& y2,
                    const k::StepCoefs& c) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  auto wrap = [&](double v) {
    v = v - two_pi * std::floor(v / two_pi);
    if (v >= two_pi) v -= two_pi;
    if (v < 0) v += two_pi;
    return v;
  };
  for (std::size_t i = 0; i < y1.size(); ++i) {
    double a = y1[i], b = y2.empty() ? 0.0 : y2[i];
    double na = a, nb = b;
    switch (id) {
      case k::FieldKernelId::Const1D:
        na = a + par.p[0] * c.x[0];
        break;
      case k::FieldKernelId::Sin1D:
      case k::FieldKernelId::Compress:
        na = a + c.x[0] * std::sin(a) + c.xx[0] * std::sin(a) * std::cos(a);
        break;
      case k::FieldKernelId::Const2D:
        na = a + par.p[0] * c.x[0];
        nb = b + par.p[1] * c.x[0];
        break;
      case k::FieldKernelId::Shear:
        na = a + c.x[0] * std::sin(b);
        break;
      case k::FieldKernelId::TwoField:
        na = a + c.x[0] * std::sin(b) + c.xx[1 * c.ell + 0] * std::sin(a) * std::cos(b);
        nb = b + c.x[1] * std::sin(a) + c.xx[0 * c.ell + 1] * std::sin(b) * std::cos(a);
        break;
      default:
        break;
    }
    y1[i] = wrap(na);
    if (!y2.empty()) y2[i] = wrap(nb);
  }
}

}  // namespace

TEST_CASE("vector sincos matches libm") {
  const std::size_t n = 4097;
  std::vector<double> x(n), s(n), c(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = -4.0 * std::numbers::pi +
           8.0 * std::numbers::pi * static_cast<double>(i) / (n - 1);

  for (auto b : {k::Backend::Scalar, k::Backend::Avx2}) {
    if (b == k::Backend::Avx2 && !have_avx2()) continue;
    k::sincos_batch(x, s, c, b);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      worst = std::max(worst, std::fabs(s[i] - std::sin(x[i])));
      worst = std::max(worst, std::fabs(c[i] - std::cos(x[i])));
    }
    CHECK(worst <= 1e-15);
  }
}

TEST_CASE("reduction kernels agree across backends") {
  for (std::size_t n : {std::size_t{1}, std::size_t{7}, std::size_t{64},
                        std::size_t{1000}}) {
    auto x = random_vec(n, 10 + n, -1.0, 1.0);
    auto y = random_vec(n, 20 + n, -1.0, 1.0);

    const double d0 = k::dot(x, y, k::Backend::Scalar);
    const double s0 = k::sum(x, k::Backend::Scalar);
    const double m0 = k::max_abs(x, k::Backend::Scalar);
    if (have_avx2()) {
      CHECK(k::dot(x, y, k::Backend::Avx2) ==
            doctest::Approx(d0).epsilon(1e-13));
      CHECK(k::sum(x, k::Backend::Avx2) == doctest::Approx(s0).epsilon(1e-13));
      CHECK(k::max_abs(x, k::Backend::Avx2) == m0);
    }

    auto y1 = y, y2 = y;
    k::axpy(0.37, x, y1, k::Backend::Scalar);
    if (have_avx2()) {
      k::axpy(0.37, x, y2, k::Backend::Avx2);
      for (std::size_t i = 0; i < n; ++i)
        CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(1e-15));
    }

    std::vector<double> h1(n), h2(n);
    k::hadamard(x, y, h1, k::Backend::Scalar);
    if (have_avx2()) {
      k::hadamard(x, y, h2, k::Backend::Avx2);
      for (std::size_t i = 0; i < n; ++i) CHECK(h1[i] == h2[i]);
    }
  }
}

TEST_CASE("wrap_2pi lands in [0, 2pi)") {
  auto x = random_vec(513, 77, -30.0, 30.0);
  for (auto b : {k::Backend::Scalar, k::Backend::Avx2}) {
    if (b == k::Backend::Avx2 && !have_avx2()) continue;
    auto v = x;
    k::wrap_2pi(v, b);
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t i = 0; i < v.size(); ++i) {
      CHECK(v[i] >= 0.0);
      CHECK(v[i] < two_pi);
      const double diff = (x[i] - v[i]) / two_pi;
      CHECK(std::fabs(diff - std::round(diff)) <= 1e-12);
    }
  }
}

TEST_CASE("field step kernels match the reference update") {
  GaussianRng rng(5);
  for (auto id : {k::FieldKernelId::Const1D, k::FieldKernelId::Sin1D,
                  k::FieldKernelId::Const2D, k::FieldKernelId::Shear,
                  k::FieldKernelId::Compress, k::FieldKernelId::TwoField}) {
    k::FieldKernelParams par;
    par.p = {0.8, -0.4, 0.0, 0.0};
    k::StepCoefs c;
    c.ell = (id == k::FieldKernelId::TwoField) ? 2 : 1;
    for (int i = 0; i < c.ell; ++i) c.x[i] = 0.05 * rng.normal();
    for (int i = 0; i < c.ell * c.ell; ++i) c.xx[i] = 0.002 * rng.normal();

    const bool two_d = id == k::FieldKernelId::Const2D ||
                       id == k::FieldKernelId::Shear ||
                       id == k::FieldKernelId::Compress ||
                       id == k::FieldKernelId::TwoField;
    const std::size_t n = 259;
    auto y1r = random_vec(n, 100, 0.0, 2.0 * std::numbers::pi);
    auto y2r = two_d ? random_vec(n, 200, 0.0, 2.0 * std::numbers::pi)
                     : std::vector<double>{};

    auto ref1 = y1r, ref2 = y2r;
    reference_step(id, par, ref1, ref2, c);

    for (auto b : {k::Backend::Scalar, k::Backend::Avx2}) {
      if (b == k::Backend::Avx2 && !have_avx2()) continue;
      auto a1 = y1r, a2 = y2r;
      k::step_points(id, par, a1, a2, c, b);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(a1[i] == doctest::Approx(ref1[i]).epsilon(5e-15));
        if (two_d) CHECK(a2[i] == doctest::Approx(ref2[i]).epsilon(5e-15));
      }
    }
  }
}
