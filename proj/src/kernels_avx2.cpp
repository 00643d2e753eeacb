// AVX2 + FMA batch kernels. Only this translation unit is compiled with
// -mavx2 -mfma; it includes nothing but the intrinsics and the internal
// prototypes.

#include <immintrin.h>

#include "kernels_simd.hpp"

namespace tls::kernels::detail {

namespace {

constexpr double kLog2e = 1.4426950408889634074;
constexpr double kLn2Hi = 6.93147180369123816490e-01;
constexpr double kLn2Lo = 1.90821492927058770002e-10;
constexpr double kSqrt2 = 1.41421356237309504880;
// Below kSmall, 1 - e^-a comes from the expm1 series to keep tanh(a/2)
// accurate relative to its own size.
constexpr double kSmall = 0.35;
// Above kScalarFallback, e^-a approaches the subnormal range; such blocks go
// through the scalar reference.
constexpr double kScalarFallback = 700.0;

struct FactorialTable {
  double v[17];
};

constexpr FactorialTable inverse_factorials() {
  FactorialTable c{};
  double f = 1.0;
  for (int k = 0; k < 17; ++k) {
    if (k > 0) f *= k;
    c.v[k] = 1.0 / f;
  }
  return c;
}

constexpr FactorialTable kInvFactTable = inverse_factorials();
constexpr const double (&kInvFact)[17] = kInvFactTable.v;

inline __m256d splat(double v) { return _mm256_set1_pd(v); }

// e^y for y in [-kScalarFallback, 0]: Cody-Waite reduction, degree-13 Taylor
// polynomial on |r| <= ln2/2, then scaling by 2^n through the exponent bits.
inline __m256d exp_nonpositive(__m256d y) {
  const __m256d n = _mm256_round_pd(_mm256_mul_pd(y, splat(kLog2e)), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, splat(kLn2Hi), y);
  r = _mm256_fnmadd_pd(n, splat(kLn2Lo), r);

  __m256d poly = splat(kInvFact[13]);
  for (int k = 12; k >= 0; --k) poly = _mm256_fmadd_pd(poly, r, splat(kInvFact[k]));

  const __m256i n64 = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(n));
  const __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
  return _mm256_mul_pd(poly, _mm256_castsi256_pd(bits));
}

// e^t - 1 for |t| < kSmall.
inline __m256d expm1_small(__m256d t) {
  __m256d poly = splat(kInvFact[14]);
  for (int k = 13; k >= 1; --k) poly = _mm256_fmadd_pd(poly, t, splat(kInvFact[k]));
  return _mm256_mul_pd(poly, t);
}

// ln w for w in [1, 2]: w = 2^k f with f in [sqrt(1/2), sqrt(2)], then
// ln f = 2 atanh(s), s = (f - 1)/(f + 1), |s| <= 0.172.
inline __m256d log_1_2(__m256d w) {
  const __m256d big = _mm256_cmp_pd(w, splat(kSqrt2), _CMP_GT_OQ);
  const __m256d f = _mm256_blendv_pd(w, _mm256_mul_pd(w, splat(0.5)), big);
  const __m256d k = _mm256_and_pd(big, splat(1.0));
  const __m256d s = _mm256_div_pd(_mm256_sub_pd(f, splat(1.0)), _mm256_add_pd(f, splat(1.0)));
  const __m256d z = _mm256_mul_pd(s, s);

  __m256d poly = splat(1.0 / 23.0);
  for (int j = 10; j >= 0; --j) poly = _mm256_fmadd_pd(poly, z, splat(1.0 / (2.0 * j + 1.0)));
  const __m256d ln_f = _mm256_mul_pd(_mm256_add_pd(s, s), poly);
  return _mm256_fmadd_pd(k, splat(kLn2Hi), _mm256_fmadd_pd(k, splat(kLn2Lo), ln_f));
}

}  // namespace

void evaluate_avx2(const double* x, std::size_t n, double* p, double* e, double* s) noexcept {
  const __m256d sign = splat(-0.0);
  const __m256d one = splat(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    const __m256d a = _mm256_andnot_pd(sign, xv);
    if (_mm256_movemask_pd(_mm256_cmp_pd(a, splat(kScalarFallback), _CMP_GT_OQ)) != 0) {
      evaluate_scalar(x + i, 4, p + i, e + i, s + i);
      continue;
    }
    const __m256d t = _mm256_xor_pd(a, sign);  // -a
    const __m256d small = _mm256_cmp_pd(a, splat(kSmall), _CMP_LT_OQ);
    const __m256d em_series = expm1_small(t);
    const __m256d u_exp = exp_nonpositive(t);
    const __m256d u = _mm256_blendv_pd(u_exp, _mm256_add_pd(one, em_series), small);
    const __m256d em = _mm256_blendv_pd(_mm256_sub_pd(u_exp, one), em_series, small);
    const __m256d one_plus_u = _mm256_add_pd(one, u);

    // tanh(a/2) = (1 - e^-a)/(1 + e^-a)
    const __m256d th = _mm256_div_pd(_mm256_xor_pd(em, sign), _mm256_add_pd(splat(2.0), em));
    const __m256d nonneg = _mm256_cmp_pd(xv, _mm256_setzero_pd(), _CMP_GE_OQ);
    const __m256d half_th = _mm256_mul_pd(splat(0.5), th);
    const __m256d e_ratio = _mm256_blendv_pd(half_th, _mm256_xor_pd(half_th, sign), nonneg);
    const __m256d pop = _mm256_div_pd(_mm256_blendv_pd(one, u, nonneg), one_plus_u);

    // ln(1 + u) with the rounding of 1 + u corrected to first order.
    const __m256d corr = _mm256_div_pd(_mm256_sub_pd(u, _mm256_sub_pd(one_plus_u, one)), one_plus_u);
    const __m256d log1p_u = _mm256_add_pd(log_1_2(one_plus_u), corr);
    const __m256d ent = _mm256_fmadd_pd(a, _mm256_div_pd(u, one_plus_u), log1p_u);

    _mm256_storeu_pd(p + i, pop);
    _mm256_storeu_pd(e + i, e_ratio);
    _mm256_storeu_pd(s + i, ent);
  }
  if (i < n) evaluate_scalar(x + i, n - i, p + i, e + i, s + i);
}

}  // namespace tls::kernels::detail
