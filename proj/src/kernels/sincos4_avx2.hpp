#pragma once

// 4-wide sine/cosine used by the AVX2 kernels. Cody-Waite reduction by
// pi/2 plus Cephes minimax polynomials on |r| <= pi/4; callers keep
// arguments moderate (torus coordinates are wrapped), where this is
// accurate to ~1 ulp.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace rd::kernels::detail {

constexpr double kPio2Hi = 1.57079632673412561417e+00;
constexpr double kPio2Md = 6.07710050650619224932e-11;
constexpr double kPio2Lo = 2.02226624879595063154e-21;
constexpr double kTwoOverPi = 6.36619772367581343076e-01;

constexpr double kSinCoef[6] = {
    -1.66666666666666307295e-1, 8.33333333332211858878e-3,
    -1.98412698295895385996e-4, 2.75573136213857245213e-6,
    -2.50507477628578072866e-8, 1.58962301576546568060e-10};
constexpr double kCosCoef[6] = {
    4.16666666666665929218e-2,  -1.38888888888730564116e-3,
    2.48015872888517179954e-5,  -2.75573141792967388112e-7,
    2.08757008419747316778e-9,  -1.13585365213876817300e-11};

inline __m256d poly5(const double* k, __m256d w) {
  __m256d p = _mm256_set1_pd(k[5]);
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(k[4]));
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(k[3]));
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(k[2]));
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(k[1]));
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(k[0]));
  return p;
}

inline void sincos4(__m256d x, __m256d& sout, __m256d& cout) {
  const __m256d q = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(kTwoOverPi)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2Hi), x);
  r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2Md), r);
  r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2Lo), r);

  const __m256d w = _mm256_mul_pd(r, r);
  const __m256d ps = _mm256_fmadd_pd(_mm256_mul_pd(r, w), poly5(kSinCoef, w), r);
  __m256d pc = _mm256_fmadd_pd(_mm256_set1_pd(-0.5), w, _mm256_set1_pd(1.0));
  pc = _mm256_fmadd_pd(_mm256_mul_pd(w, w), poly5(kCosCoef, w), pc);

  __m256d m = _mm256_fnmadd_pd(
      _mm256_set1_pd(4.0),
      _mm256_floor_pd(_mm256_mul_pd(q, _mm256_set1_pd(0.25))), q);
  const __m256d is1 = _mm256_cmp_pd(m, _mm256_set1_pd(1.0), _CMP_EQ_OQ);
  const __m256d is2 = _mm256_cmp_pd(m, _mm256_set1_pd(2.0), _CMP_EQ_OQ);
  const __m256d is3 = _mm256_cmp_pd(m, _mm256_set1_pd(3.0), _CMP_EQ_OQ);

  const __m256d neg = _mm256_set1_pd(-0.0);
  const __m256d nps = _mm256_xor_pd(ps, neg);
  const __m256d npc = _mm256_xor_pd(pc, neg);

  // quadrant m: 0 -> (s, c), 1 -> (c, -s), 2 -> (-s, -c), 3 -> (-c, s)
  __m256d s = ps;
  s = _mm256_blendv_pd(s, pc, is1);
  s = _mm256_blendv_pd(s, nps, is2);
  s = _mm256_blendv_pd(s, npc, is3);
  __m256d c = pc;
  c = _mm256_blendv_pd(c, nps, is1);
  c = _mm256_blendv_pd(c, npc, is2);
  c = _mm256_blendv_pd(c, ps, is3);
  sout = s;
  cout = c;
}

}  // namespace rd::kernels::detail

#endif
