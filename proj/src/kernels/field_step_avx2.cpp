// AVX2 variants of the characteristic-step kernels.

#include <cstddef>

#include "roughdrive/kernels/field_step.hpp"
#include "kernels_internal.hpp"

namespace rd::kernels::detail {
void step_points_scalar_entry(FieldKernelId id, const FieldKernelParams& par,
                              double* y1, double* y2, std::size_t n,
                              const StepCoefs& c);
}

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "sincos4_avx2.hpp"

namespace rd::kernels::detail {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

inline __m256d wrap4(__m256d v) {
  const __m256d two_pi = _mm256_set1_pd(kTwoPi);
  const __m256d inv = _mm256_set1_pd(1.0 / kTwoPi);
  v = _mm256_fnmadd_pd(two_pi, _mm256_floor_pd(_mm256_mul_pd(v, inv)), v);
  const __m256d ge = _mm256_cmp_pd(v, two_pi, _CMP_GE_OQ);
  v = _mm256_blendv_pd(v, _mm256_sub_pd(v, two_pi), ge);
  const __m256d lt = _mm256_cmp_pd(v, _mm256_setzero_pd(), _CMP_LT_OQ);
  return _mm256_blendv_pd(v, _mm256_add_pd(v, two_pi), lt);
}

}  // namespace

void step_points_avx2(FieldKernelId id, const FieldKernelParams& par,
                      double* y1, double* y2, std::size_t n, const StepCoefs& c) {
  std::size_t i = 0;
  switch (id) {
    case FieldKernelId::Sin1D:
    case FieldKernelId::Compress: {
      const __m256d a = _mm256_set1_pd(c.x[0]);
      const __m256d b = _mm256_set1_pd(c.xx[0]);
      for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(y1 + i);
        __m256d s, co;
        sincos4(v, s, co);
        v = _mm256_fmadd_pd(a, s, v);
        v = _mm256_fmadd_pd(b, _mm256_mul_pd(s, co), v);
        _mm256_storeu_pd(y1 + i, wrap4(v));
      }
      break;
    }
    case FieldKernelId::Shear: {
      const __m256d a = _mm256_set1_pd(c.x[0]);
      for (; i + 4 <= n; i += 4) {
        __m256d s, co;
        sincos4(_mm256_loadu_pd(y2 + i), s, co);
        __m256d v = _mm256_fmadd_pd(a, s, _mm256_loadu_pd(y1 + i));
        _mm256_storeu_pd(y1 + i, wrap4(v));
      }
      break;
    }
    case FieldKernelId::TwoField: {
      const __m256d a1 = _mm256_set1_pd(c.x[0]);
      const __m256d a2 = _mm256_set1_pd(c.x[1]);
      const __m256d b21 = _mm256_set1_pd(c.xx[1 * c.ell + 0]);
      const __m256d b12 = _mm256_set1_pd(c.xx[0 * c.ell + 1]);
      for (; i + 4 <= n; i += 4) {
        __m256d s1, c1, s2, c2;
        sincos4(_mm256_loadu_pd(y1 + i), s1, c1);
        sincos4(_mm256_loadu_pd(y2 + i), s2, c2);
        __m256d v1 = _mm256_loadu_pd(y1 + i);
        __m256d v2 = _mm256_loadu_pd(y2 + i);
        v1 = _mm256_fmadd_pd(a1, s2, v1);
        v1 = _mm256_fmadd_pd(b21, _mm256_mul_pd(s1, c2), v1);
        v2 = _mm256_fmadd_pd(a2, s1, v2);
        v2 = _mm256_fmadd_pd(b12, _mm256_mul_pd(s2, c1), v2);
        _mm256_storeu_pd(y1 + i, wrap4(v1));
        _mm256_storeu_pd(y2 + i, wrap4(v2));
      }
      break;
    }
    default:
      // Const kernels are memory-bound; the scalar path is fine.
      break;
  }
  if (i < n) {
    StepCoefs tail = c;
    step_points_scalar_entry(id, par, y1 + i, y2 ? y2 + i : nullptr, n - i, tail);
  }
}

}  // namespace rd::kernels::detail

#else

namespace rd::kernels::detail {

void step_points_avx2(FieldKernelId id, const FieldKernelParams& par,
                      double* y1, double* y2, std::size_t n, const StepCoefs& c) {
  step_points_scalar_entry(id, par, y1, y2, n, c);
}

}  // namespace rd::kernels::detail

#endif
