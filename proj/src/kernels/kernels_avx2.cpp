// Compiled with -mavx2 -mfma; only reached after a CPUID check.

#include <immintrin.h>

#include <cmath>

#include "kernels_internal.hpp"

namespace onofri::kernels::detail {

namespace {

// exp(x) lane-wise: x = k ln2 + r with |r| <= ln2/2, degree-13 Taylor
// polynomial for e^r, 2^k assembled in the exponent field.
inline __m256d exp_pd(__m256d x) {
  const __m256d underflow = _mm256_cmp_pd(x, _mm256_set1_pd(-708.0), _CMP_LT_OQ);
  x = _mm256_min_pd(_mm256_max_pd(x, _mm256_set1_pd(-708.0)), _mm256_set1_pd(709.0));

  const __m256d k = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(1.4426950408889634)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(k, _mm256_set1_pd(6.93147180369123816490e-01), x);
  r = _mm256_fnmadd_pd(k, _mm256_set1_pd(1.90821492927058770002e-10), r);

  // 1/13!, 1/12!, ..., 1/2!, 1, 1
  static constexpr double c[] = {1.6059043836821613e-10, 2.08767569878681e-09,
                                 2.505210838544172e-08,  2.755731922398589e-07,
                                 2.7557319223985893e-06, 2.48015873015873e-05,
                                 1.984126984126984e-04,  1.388888888888889e-03,
                                 8.333333333333333e-03,  4.1666666666666664e-02,
                                 1.6666666666666666e-01, 0.5,
                                 1.0,                    1.0};
  __m256d p = _mm256_set1_pd(c[0]);
  for (int i = 1; i < 14; ++i) p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(c[i]));

  // 2^k via (k + 1023) << 52, using the 2^52 shift trick for the conversion.
  const __m256d shifted = _mm256_add_pd(k, _mm256_set1_pd(4503599627370496.0 + 1023.0));
  const __m256i bits = _mm256_slli_epi64(_mm256_castpd_si256(shifted), 52);
  const __m256d result = _mm256_mul_pd(p, _mm256_castsi256_pd(bits));
  return _mm256_blendv_pd(result, _mm256_setzero_pd(), underflow);
}

inline __m256d half_power_pd(__m256d s, int n) {
  const int whole = (n - 2) / 2;
  __m256d q = _mm256_set1_pd(1.0);
  for (int i = 0; i < whole; ++i) q = _mm256_mul_pd(q, s);
  if ((n - 2) % 2 != 0) q = _mm256_mul_pd(q, _mm256_sqrt_pd(s));
  return q;
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

}  // namespace

double plaplace_avx2(int n, double reg, const double* grad, const double* weight, double* flux,
                     double* stiff, std::size_t count) {
  double reg_half = 1.0;
  for (int i = 0; i < (n - 2) / 2; ++i) reg_half *= reg;
  if ((n - 2) % 2 != 0) reg_half *= std::sqrt(reg);
  const __m256d floor = _mm256_set1_pd(reg * reg_half);
  const __m256d vreg = _mm256_set1_pd(reg);
  const __m256d nm1 = _mm256_set1_pd(n - 1.0);
  const __m256d zero = _mm256_setzero_pd();
  __m256d acc = zero;

  std::size_t e = 0;
  for (; e + 4 <= count; e += 4) {
    const __m256d g = _mm256_loadu_pd(grad + e);
    const __m256d w = _mm256_loadu_pd(weight + e);
    const __m256d s = _mm256_fmadd_pd(g, g, vreg);
    const __m256d q = half_power_pd(s, n);
    acc = _mm256_fmadd_pd(w, _mm256_fmsub_pd(q, s, floor), acc);
    _mm256_storeu_pd(flux + e, _mm256_mul_pd(_mm256_mul_pd(w, q), g));
    if (n == 2) {
      _mm256_storeu_pd(stiff + e, w);
    } else {
      const __m256d curv = _mm256_fmadd_pd(nm1, _mm256_mul_pd(g, g), vreg);
      const __m256d st = _mm256_mul_pd(_mm256_mul_pd(w, _mm256_div_pd(q, s)), curv);
      const __m256d degenerate = _mm256_cmp_pd(s, zero, _CMP_EQ_OQ);
      _mm256_storeu_pd(stiff + e, _mm256_blendv_pd(st, zero, degenerate));
    }
  }
  double energy = hsum(acc);
  if (e < count) {
    energy += plaplace_scalar(n, reg, grad + e, weight + e, flux + e, stiff + e, count - e);
  }
  return energy;
}

void exp_moments_avx2(const double* left, const double* right, std::size_t count,
                      const double* xi, std::size_t q_points, const double* coeff, double* m0,
                      double* m1, double* m2) {
  std::size_t e = 0;
  for (; e + 4 <= count; e += 4) {
    const __m256d a = _mm256_loadu_pd(left + e);
    const __m256d b = _mm256_loadu_pd(right + e);
    __m256d s0 = _mm256_setzero_pd();
    __m256d s1 = _mm256_setzero_pd();
    __m256d s2 = _mm256_setzero_pd();
    for (std::size_t q = 0; q < q_points; ++q) {
      const __m256d x = _mm256_set1_pd(xi[q]);
      const __m256d one_minus = _mm256_set1_pd(1.0 - xi[q]);
      const __m256d arg = _mm256_fmadd_pd(b, x, _mm256_mul_pd(a, one_minus));
      const __m256d ce = _mm256_mul_pd(_mm256_loadu_pd(coeff + q * count + e), exp_pd(arg));
      s0 = _mm256_add_pd(s0, ce);
      s1 = _mm256_fmadd_pd(ce, x, s1);
      s2 = _mm256_fmadd_pd(_mm256_mul_pd(ce, x), x, s2);
    }
    _mm256_storeu_pd(m0 + e, s0);
    _mm256_storeu_pd(m1 + e, s1);
    _mm256_storeu_pd(m2 + e, s2);
  }
  for (; e < count; ++e) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (std::size_t q = 0; q < q_points; ++q) {
      const double x = xi[q];
      const double ce = coeff[q * count + e] * std::exp(left[e] * (1.0 - x) + right[e] * x);
      s0 += ce;
      s1 += ce * x;
      s2 += ce * x * x;
    }
    m0[e] = s0;
    m1[e] = s1;
    m2[e] = s2;
  }
}

}  // namespace onofri::kernels::detail
