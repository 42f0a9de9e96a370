// AVX2+FMA variants of the reduction / sincos kernels.
// Built with -mavx2 -mfma on x86_64; elsewhere the entry points forward
// to the scalar reference implementations.

#include <cmath>
#include <cstddef>

#include "kernels_internal.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "sincos4_avx2.hpp"

namespace rd::kernels::detail {

namespace {

inline double hsum(__m256d v) {
  alignas(32) double lane[4];
  _mm256_store_pd(lane, v);
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

}  // namespace

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double sum_avx2(const double* x, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
  double acc = hsum(acc0);
  for (; i < n; ++i) acc += x[i];
  return acc;
}

double max_abs_avx2(const double* x, std::size_t n) {
  const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    m = _mm256_max_pd(m, _mm256_and_pd(mask, _mm256_loadu_pd(x + i)));
  alignas(32) double lane[4];
  _mm256_store_pd(lane, m);
  double r = std::max(std::max(lane[0], lane[1]), std::max(lane[2], lane[3]));
  for (; i < n; ++i) r = std::max(r, std::fabs(x[i]));
  return r;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i),
                                            _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] += a * x[i];
}

void scale_avx2(double a, double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= a;
}

void hadamard_avx2(const double* x, const double* y, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(x + i),
                                            _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) out[i] = x[i] * y[i];
}

void sincos_avx2(const double* x, double* s, double* c, std::size_t n) {
  std::size_t i = 0;
  __m256d vs, vc;
  for (; i + 4 <= n; i += 4) {
    sincos4(_mm256_loadu_pd(x + i), vs, vc);
    if (s) _mm256_storeu_pd(s + i, vs);
    if (c) _mm256_storeu_pd(c + i, vc);
  }
  if (i < n) {
    alignas(32) double xin[4] = {0, 0, 0, 0};
    alignas(32) double so[4], co[4];
    for (std::size_t j = i; j < n; ++j) xin[j - i] = x[j];
    sincos4(_mm256_load_pd(xin), vs, vc);
    _mm256_store_pd(so, vs);
    _mm256_store_pd(co, vc);
    for (std::size_t j = i; j < n; ++j) {
      if (s) s[j] = so[j - i];
      if (c) c[j] = co[j - i];
    }
  }
}

void wrap2pi_avx2(double* x, std::size_t n) {
  const double two_pi_d = 6.283185307179586476925286766559;
  const __m256d two_pi = _mm256_set1_pd(two_pi_d);
  const __m256d inv_two_pi = _mm256_set1_pd(1.0 / two_pi_d);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    v = _mm256_fnmadd_pd(two_pi, _mm256_floor_pd(_mm256_mul_pd(v, inv_two_pi)), v);
    __m256d ge = _mm256_cmp_pd(v, two_pi, _CMP_GE_OQ);
    v = _mm256_blendv_pd(v, _mm256_sub_pd(v, two_pi), ge);
    __m256d lt = _mm256_cmp_pd(v, zero, _CMP_LT_OQ);
    v = _mm256_blendv_pd(v, _mm256_add_pd(v, two_pi), lt);
    _mm256_storeu_pd(x + i, v);
  }
  if (i < n) wrap2pi_scalar(x + i, n - i);
}

}  // namespace rd::kernels::detail

#else  // non-x86 fallback: forward to the scalar reference kernels

namespace rd::kernels::detail {

double dot_avx2(const double* x, const double* y, std::size_t n) { return dot_scalar(x, y, n); }
double sum_avx2(const double* x, std::size_t n) { return sum_scalar(x, n); }
double max_abs_avx2(const double* x, std::size_t n) { return max_abs_scalar(x, n); }
void axpy_avx2(double a, const double* x, double* y, std::size_t n) { axpy_scalar(a, x, y, n); }
void scale_avx2(double a, double* x, std::size_t n) { scale_scalar(a, x, n); }
void hadamard_avx2(const double* x, const double* y, double* out, std::size_t n) { hadamard_scalar(x, y, out, n); }
void sincos_avx2(const double* x, double* s, double* c, std::size_t n) { sincos_scalar(x, s, c, n); }
void wrap2pi_avx2(double* x, std::size_t n) { wrap2pi_scalar(x, n); }

}  // namespace rd::kernels::detail

#endif
