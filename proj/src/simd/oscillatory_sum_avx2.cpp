// Built with -mavx2 -mfma. Keep this file free of standard library
// templates: anything instantiated here would carry AVX2 encodings.

#include <immintrin.h>

#include "avx2_entry.hpp"

namespace trilayer::simd::detail {

namespace {

// pi/2 split into 33 + 33 + 53 bits (fdlibm).
constexpr double kPio2Hi = 1.57079632673412561417e+00;
constexpr double kPio2Mid = 6.07710050630396597660e-11;
constexpr double kPio2Lo = 2.02226624871116645580e-21;
constexpr double kTwoOverPi = 6.36619772367581382433e-01;

// Minimax coefficients on [-pi/4, pi/4] (Cephes sin.c).
constexpr double kS0 = 1.58962301576546568060e-10;
constexpr double kS1 = -2.50507477628578072866e-8;
constexpr double kS2 = 2.75573136213857245213e-6;
constexpr double kS3 = -1.98412698295895385996e-4;
constexpr double kS4 = 8.33333333332211858878e-3;
constexpr double kS5 = -1.66666666666666307295e-1;
constexpr double kC0 = -1.13585365213876817300e-11;
constexpr double kC1 = 2.08757008419747316778e-9;
constexpr double kC2 = -2.75573141792967388112e-7;
constexpr double kC3 = 2.48015872888517045348e-5;
constexpr double kC4 = -1.38888888888730564116e-3;
constexpr double kC5 = 4.16666666666665929218e-2;

inline void sincos4(__m256d x, __m256d& s_out, __m256d& c_out) {
  const __m256d q = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(kTwoOverPi)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2Hi), x);
  r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2Mid), r);
  r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2Lo), r);
  const __m256d z = _mm256_mul_pd(r, r);

  __m256d ps = _mm256_set1_pd(kS0);
  ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(kS1));
  ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(kS2));
  ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(kS3));
  ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(kS4));
  ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(kS5));
  const __m256d sr = _mm256_fmadd_pd(_mm256_mul_pd(r, z), ps, r);

  __m256d pc = _mm256_set1_pd(kC0);
  pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(kC1));
  pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(kC2));
  pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(kC3));
  pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(kC4));
  pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(kC5));
  const __m256d one_minus = _mm256_fnmadd_pd(_mm256_set1_pd(0.5), z, _mm256_set1_pd(1.0));
  const __m256d cr = _mm256_fmadd_pd(_mm256_mul_pd(z, z), pc, one_minus);

  // Quadrant in the low mantissa bits (|q| < 2^51).
  const __m256i qi =
      _mm256_castpd_si256(_mm256_add_pd(q, _mm256_set1_pd(6755399441055744.0)));
  const __m256i one = _mm256_set1_epi64x(1);
  const __m256i two = _mm256_set1_epi64x(2);
  const __m256d swap =
      _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(qi, one), one));
  const __m256d sin_neg =
      _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(qi, two), two));
  const __m256d cos_neg = _mm256_castsi256_pd(
      _mm256_cmpeq_epi64(_mm256_and_si256(_mm256_add_epi64(qi, one), two), two));
  const __m256d sign_bit = _mm256_set1_pd(-0.0);

  const __m256d s = _mm256_blendv_pd(sr, cr, swap);
  const __m256d c = _mm256_blendv_pd(cr, sr, swap);
  s_out = _mm256_xor_pd(s, _mm256_and_pd(sin_neg, sign_bit));
  c_out = _mm256_xor_pd(c, _mm256_and_pd(cos_neg, sign_bit));
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double absval(double v) { return v < 0.0 ? -v : v; }

}  // namespace

void sincos_avx2_raw(const double* x, double* s, double* c, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d sv;
    __m256d cv;
    sincos4(_mm256_loadu_pd(x + i), sv, cv);
    _mm256_storeu_pd(s + i, sv);
    _mm256_storeu_pd(c + i, cv);
  }
  if (i < n) {
    alignas(32) double xb[4] = {0.0, 0.0, 0.0, 0.0};
    alignas(32) double sb[4];
    alignas(32) double cb[4];
    for (std::size_t j = 0; i + j < n; ++j) xb[j] = x[i + j];
    __m256d sv;
    __m256d cv;
    sincos4(_mm256_load_pd(xb), sv, cv);
    _mm256_store_pd(sb, sv);
    _mm256_store_pd(cb, cv);
    for (std::size_t j = 0; i + j < n; ++j) {
      s[i + j] = sb[j];
      c[i + j] = cb[j];
    }
  }
}

void oscillatory_sums_avx2_raw(const double* omega, const double* a, const double* b,
                               const double* ea, const double* eb, std::size_t n,
                               std::size_t panel_size, double t, double* out3) {
  const __m256d tv = _mm256_set1_pd(t);
  __m256d acc_c = _mm256_setzero_pd();
  __m256d acc_s = _mm256_setzero_pd();
  double err = 0.0;
  for (std::size_t base = 0; base < n; base += panel_size) {
    __m256d pe_c = _mm256_setzero_pd();
    __m256d pe_s = _mm256_setzero_pd();
    for (std::size_t i = base; i < base + panel_size; i += 4) {
      __m256d sv;
      __m256d cv;
      sincos4(_mm256_mul_pd(_mm256_loadu_pd(omega + i), tv), sv, cv);
      acc_c = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), cv, acc_c);
      acc_s = _mm256_fmadd_pd(_mm256_loadu_pd(b + i), sv, acc_s);
      pe_c = _mm256_fmadd_pd(_mm256_loadu_pd(ea + i), cv, pe_c);
      pe_s = _mm256_fmadd_pd(_mm256_loadu_pd(eb + i), sv, pe_s);
    }
    err += absval(hsum(pe_c)) + absval(hsum(pe_s));
  }
  out3[0] = hsum(acc_c);
  out3[1] = hsum(acc_s);
  out3[2] = err;
}

}  // namespace trilayer::simd::detail
