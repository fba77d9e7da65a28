// AVX2/FMA variants of the batched integrand kernels. This translation unit is
// the only one compiled with -mavx2 -mfma; callers reach it through the
// run-time dispatch in dispatch.cpp.

#include <immintrin.h>

#include <array>
#include <cstddef>

#include "casimir/kernels.hpp"

namespace casimir::kernels::avx2 {

namespace {

struct ExpPair {
  __m256d exp;
  __m256d expm1;
};

// 2^k for integral k in [-1022, 1023], built in the exponent field.
inline __m256d pow2(__m256d k) {
  const __m256i k64 = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(k));
  return _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_add_epi64(k64, _mm256_set1_epi64x(1023)), 52));
}

// exp(z) and expm1(z) sharing one range reduction: z = n ln2 + r, |r| <= ln2/2,
// expm1(r) from its Taylor polynomial through r^13 (truncation < 1.2e-17
// relative), then exp = 2^n (1 + expm1(r)), expm1 = 2^n expm1(r) + (2^n - 1).
// For n = 0 the expm1 result keeps full relative accuracy near z = 0.
// 2^n is applied as two factors so that results reach into the subnormal
// range the way libm's do.
inline ExpPair exp_expm1_pd(__m256d z) {
  const __m256d lo = _mm256_set1_pd(-746.0);
  const __m256d hi = _mm256_set1_pd(709.0);
  const __m256d underflow = _mm256_cmp_pd(z, lo, _CMP_LT_OQ);
  const __m256d zc = _mm256_min_pd(_mm256_max_pd(z, lo), hi);

  const __m256d n = _mm256_round_pd(_mm256_mul_pd(zc, _mm256_set1_pd(1.4426950408889634074)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, _mm256_set1_pd(6.93147180369123816490e-01), zc);
  r = _mm256_fnmadd_pd(n, _mm256_set1_pd(1.90821492927058770002e-10), r);

  constexpr std::array<double, 13> inv_factorial = {
      1.0,
      1.0 / 2.0,
      1.0 / 6.0,
      1.0 / 24.0,
      1.0 / 120.0,
      1.0 / 720.0,
      1.0 / 5040.0,
      1.0 / 40320.0,
      1.0 / 362880.0,
      1.0 / 3628800.0,
      1.0 / 39916800.0,
      1.0 / 479001600.0,
      1.0 / 6227020800.0};
  __m256d poly = _mm256_set1_pd(inv_factorial[12]);
  for (int k = 11; k >= 0; --k) poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(inv_factorial[k]));
  const __m256d em_r = _mm256_mul_pd(poly, r);

  const __m256d n1 = _mm256_floor_pd(_mm256_mul_pd(n, _mm256_set1_pd(0.5)));
  const __m256d s1 = pow2(n1);
  const __m256d s2 = pow2(_mm256_sub_pd(n, n1));
  const __m256d scale = _mm256_mul_pd(s1, s2);  // exact, possibly subnormal

  const __m256d one = _mm256_set1_pd(1.0);
  __m256d e = _mm256_mul_pd(_mm256_fmadd_pd(s1, em_r, s1), s2);
  __m256d em = _mm256_fmadd_pd(scale, em_r, _mm256_sub_pd(scale, one));
  e = _mm256_blendv_pd(e, _mm256_setzero_pd(), underflow);
  em = _mm256_blendv_pd(em, _mm256_set1_pd(-1.0), underflow);
  return {e, em};
}


// rho - R e, from the complements only where both terms exceed 1/2 in magnitude.
inline __m256d difference(__m256d rho, __m256d omr, __m256d Re, __m256d omRe) {
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d sign = _mm256_set1_pd(-0.0);
  const __m256d big = _mm256_and_pd(_mm256_cmp_pd(_mm256_andnot_pd(sign, rho), half, _CMP_GT_OQ),
                                    _mm256_cmp_pd(_mm256_andnot_pd(sign, Re), half, _CMP_GT_OQ));
  return _mm256_blendv_pd(_mm256_sub_pd(rho, Re), _mm256_sub_pd(omRe, omr), big);
}

struct Lane {
  __m256d R1, R2;
};

inline __m256d polarization_term(bool interaction, Lane refl, __m256d rho, __m256d omr, __m256d E,
                                 __m256d omE, ExpPair gap1, ExpPair gap2) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d ome1 = _mm256_sub_pd(_mm256_setzero_pd(), gap1.expm1);
  const __m256d ome2 = _mm256_sub_pd(_mm256_setzero_pd(), gap2.expm1);
  const __m256d omRe1 = _mm256_fmadd_pd(refl.R1, ome1, _mm256_sub_pd(one, refl.R1));
  const __m256d omRe2 = _mm256_fmadd_pd(refl.R2, ome2, _mm256_sub_pd(one, refl.R2));
  const __m256d opRe1 = _mm256_fnmadd_pd(refl.R1, ome1, _mm256_add_pd(one, refl.R1));
  const __m256d opRe2 = _mm256_fnmadd_pd(refl.R2, ome2, _mm256_add_pd(one, refl.R2));
  const __m256d Re1 = _mm256_mul_pd(refl.R1, gap1.exp);
  const __m256d Re2 = _mm256_mul_pd(refl.R2, gap2.exp);
  const __m256d a1 = difference(rho, omr, Re1, omRe1);
  const __m256d a2 = difference(rho, omr, Re2, omRe2);
  const __m256d b1 = _mm256_fmadd_pd(rho, omRe1, omr);
  const __m256d b2 = _mm256_fmadd_pd(rho, omRe2, omr);
  const __m256d cross = _mm256_fmadd_pd(opRe2, a1, _mm256_mul_pd(opRe1, b2));
  const __m256d denom =
      _mm256_fmadd_pd(_mm256_mul_pd(b1, b2), omE, _mm256_mul_pd(_mm256_mul_pd(omr, cross), E));
  if (interaction) {
    const __m256d numer = _mm256_mul_pd(_mm256_mul_pd(rho, omE), _mm256_sub_pd(Re2, Re1));
    return _mm256_div_pd(numer, denom);
  }
  return _mm256_div_pd(_mm256_mul_pd(_mm256_mul_pd(a1, a2), E), denom);
}

inline __m256d slab_lanes(const SlabRow& row, __m256d x2, __m256d u) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d minus_two = _mm256_set1_pd(-2.0);

  const __m256d k2 = _mm256_fmadd_pd(u, u, x2);
  const __m256d kappa = _mm256_sqrt_pd(k2);
  const __m256d kappa_s = _mm256_sqrt_pd(_mm256_add_pd(k2, one));
  const __m256d sum = _mm256_add_pd(kappa, kappa_s);

  const ExpPair slab = exp_expm1_pd(_mm256_mul_pd(_mm256_mul_pd(minus_two, kappa_s), _mm256_set1_pd(row.ds)));
  const __m256d E = slab.exp;
  const __m256d omE = _mm256_sub_pd(_mm256_setzero_pd(), slab.expm1);
  const __m256d mk = _mm256_mul_pd(minus_two, kappa);
  const ExpPair gap1 = exp_expm1_pd(_mm256_mul_pd(mk, _mm256_set1_pd(row.gap_left)));
  const ExpPair gap2 = exp_expm1_pd(_mm256_mul_pd(mk, _mm256_set1_pd(row.gap_right)));

  const __m256d dp = _mm256_fmadd_pd(_mm256_add_pd(x2, one), kappa, _mm256_mul_pd(x2, kappa_s));
  const __m256d rho_p = _mm256_div_pd(_mm256_sub_pd(kappa, _mm256_div_pd(x2, sum)), dp);
  const __m256d omr_p = _mm256_div_pd(_mm256_mul_pd(_mm256_mul_pd(two, x2), kappa_s), dp);
  const __m256d rho_s = _mm256_div_pd(_mm256_set1_pd(-1.0), _mm256_mul_pd(sum, sum));
  const __m256d omr_s = _mm256_div_pd(_mm256_mul_pd(two, kappa_s), sum);

  const Lane lp{_mm256_set1_pd(row.reflect_left[0]), _mm256_set1_pd(row.reflect_right[0])};
  const Lane ls{_mm256_set1_pd(row.reflect_left[1]), _mm256_set1_pd(row.reflect_right[1])};
  const __m256d terms =
      _mm256_add_pd(polarization_term(row.interaction, lp, rho_p, omr_p, E, omE, gap1, gap2),
                    polarization_term(row.interaction, ls, rho_s, omr_s, E, omE, gap1, gap2));
  return _mm256_mul_pd(_mm256_mul_pd(u, row.interaction ? kappa : kappa_s), terms);
}

inline __m256d nonretarded_lanes(__m256d gap, __m256d t) {
  const ExpPair e = exp_expm1_pd(_mm256_sub_pd(_mm256_setzero_pd(), t));
  const __m256d numer = _mm256_mul_pd(_mm256_mul_pd(t, t), e.exp);
  return _mm256_div_pd(numer, _mm256_sub_pd(gap, e.expm1));
}

// Runs `lanes` over `in` four at a time; the tail is padded with the last
// valid abscissa and only the valid results are stored.
template <class Lanes>
void for_each_quad(std::span<const double> in, std::span<double> out, Lanes lanes) {
  std::size_t i = 0;
  for (; i + 4 <= in.size(); i += 4) _mm256_storeu_pd(out.data() + i, lanes(_mm256_loadu_pd(in.data() + i)));
  if (i == in.size()) return;
  alignas(32) std::array<double, 4> pad{};
  alignas(32) std::array<double, 4> res{};
  for (std::size_t j = 0; j < 4; ++j) pad[j] = in[i + j < in.size() ? i + j : in.size() - 1];
  _mm256_store_pd(res.data(), lanes(_mm256_load_pd(pad.data())));
  for (std::size_t j = 0; i + j < in.size(); ++j) out[i + j] = res[j];
}

}  // namespace

void slab_integrand(const SlabRow& row, double x, std::span<const double> u, std::span<double> out) {
  const __m256d x2 = _mm256_set1_pd(x * x);
  for_each_quad(u, out, [&](__m256d uv) { return slab_lanes(row, x2, uv); });
}

void nonretarded_integrand(double x, std::span<const double> t, std::span<double> out) {
  const double x2 = x * x;
  const __m256d gap = _mm256_set1_pd(4.0 * x2 * (x2 + 1.0));
  for_each_quad(t, out, [&](__m256d tv) { return nonretarded_lanes(gap, tv); });
}

void exp_expm1(std::span<const double> z, std::span<double> exp_out, std::span<double> expm1_out) {
  for (std::size_t i = 0; i < z.size(); ++i) {
    const ExpPair r = exp_expm1_pd(_mm256_set1_pd(z[i]));
    exp_out[i] = _mm256_cvtsd_f64(r.exp);
    expm1_out[i] = _mm256_cvtsd_f64(r.expm1);
  }
}

}  // namespace casimir::kernels::avx2
