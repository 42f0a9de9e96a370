#include <cmath>
#include <numbers>

#include "roughdrive/kernels/reduce.hpp"
#include "kernels_internal.hpp"

namespace rd::kernels {

namespace detail {

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double sum_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double max_abs_scalar(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(x[i]));
  return m;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale_scalar(double a, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void hadamard_scalar(const double* x, const double* y, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] * y[i];
}

void sincos_scalar(const double* x, double* s, double* c, std::size_t n) {
  if (s && c) {
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = std::sin(x[i]);
      c[i] = std::cos(x[i]);
    }
  } else if (s) {
    for (std::size_t i = 0; i < n; ++i) s[i] = std::sin(x[i]);
  } else if (c) {
    for (std::size_t i = 0; i < n; ++i) c[i] = std::cos(x[i]);
  }
}

void wrap2pi_scalar(double* x, std::size_t n) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  constexpr double inv_two_pi = 1.0 / two_pi;
  for (std::size_t i = 0; i < n; ++i) {
    double v = x[i] - two_pi * std::floor(x[i] * inv_two_pi);
    if (v >= two_pi) v -= two_pi;
    if (v < 0.0) v += two_pi;
    x[i] = v;
  }
}

}  // namespace detail

double dot(std::span<const double> x, std::span<const double> y, Backend b) {
  return b == Backend::Avx2 ? detail::dot_avx2(x.data(), y.data(), x.size())
                            : detail::dot_scalar(x.data(), y.data(), x.size());
}

double sum(std::span<const double> x, Backend b) {
  return b == Backend::Avx2 ? detail::sum_avx2(x.data(), x.size())
                            : detail::sum_scalar(x.data(), x.size());
}

double max_abs(std::span<const double> x, Backend b) {
  return b == Backend::Avx2 ? detail::max_abs_avx2(x.data(), x.size())
                            : detail::max_abs_scalar(x.data(), x.size());
}

void axpy(double a, std::span<const double> x, std::span<double> y, Backend b) {
  if (b == Backend::Avx2)
    detail::axpy_avx2(a, x.data(), y.data(), x.size());
  else
    detail::axpy_scalar(a, x.data(), y.data(), x.size());
}

void scale(double a, std::span<double> x, Backend b) {
  if (b == Backend::Avx2)
    detail::scale_avx2(a, x.data(), x.size());
  else
    detail::scale_scalar(a, x.data(), x.size());
}

void hadamard(std::span<const double> x, std::span<const double> y,
              std::span<double> out, Backend b) {
  if (b == Backend::Avx2)
    detail::hadamard_avx2(x.data(), y.data(), out.data(), x.size());
  else
    detail::hadamard_scalar(x.data(), y.data(), out.data(), x.size());
}

void sincos_batch(std::span<const double> x, std::span<double> s,
                  std::span<double> c, Backend b) {
  double* sp = s.empty() ? nullptr : s.data();
  double* cp = c.empty() ? nullptr : c.data();
  if (b == Backend::Avx2)
    detail::sincos_avx2(x.data(), sp, cp, x.size());
  else
    detail::sincos_scalar(x.data(), sp, cp, x.size());
}

void wrap_2pi(std::span<double> x, Backend b) {
  if (b == Backend::Avx2)
    detail::wrap2pi_avx2(x.data(), x.size());
  else
    detail::wrap2pi_scalar(x.data(), x.size());
}

}  // namespace rd::kernels
