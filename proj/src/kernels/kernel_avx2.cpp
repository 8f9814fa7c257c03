// AVX2+FMA variant of the exponential-profile kernel. This TU is the only one
// compiled with -mavx2 -mfma; it must stay free of code that could be called
// on CPUs without AVX2 (dispatch happens in kernel.cpp).

#include "kernel_impl.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

namespace profit::kernel::detail {

namespace {

// e^x for four lanes via Cody–Waite reduction x = n·ln2 + r and a degree
// (2,3) rational approximation of e^r in r², then exponent-bit scaling by
// 2^n. Inputs are clamped to [-708, 709]; below the clamp the result is 0,
// above it +inf. Accuracy: a few ulp, and ≤ 4e-16 relative vs std::exp.
inline __m256d vexp4(__m256d x) {
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
    const __m256d c1 = _mm256_set1_pd(6.93145751953125e-1);
    const __m256d c2 = _mm256_set1_pd(1.42860682030941723212e-6);
    const __m256d p0 = _mm256_set1_pd(1.26177193074810590878e-4);
    const __m256d p1 = _mm256_set1_pd(3.02994407707441961300e-2);
    const __m256d p2 = _mm256_set1_pd(9.99999999999999999910e-1);
    const __m256d q0 = _mm256_set1_pd(3.00198505138664455042e-6);
    const __m256d q1 = _mm256_set1_pd(2.52448340349684104192e-3);
    const __m256d q2 = _mm256_set1_pd(2.27265548208155028766e-1);
    const __m256d q3 = _mm256_set1_pd(2.00000000000000000005e0);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d lo = _mm256_set1_pd(-708.0);
    const __m256d hi = _mm256_set1_pd(709.0);

    const __m256d too_small = _mm256_cmp_pd(x, lo, _CMP_LT_OQ);
    const __m256d too_big = _mm256_cmp_pd(x, hi, _CMP_GT_OQ);
    const __m256d xc = _mm256_max_pd(_mm256_min_pd(x, hi), lo);

    const __m256d n =
        _mm256_round_pd(_mm256_mul_pd(xc, log2e), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(n, c1, xc);
    r = _mm256_fnmadd_pd(n, c2, r);
    const __m256d rr = _mm256_mul_pd(r, r);

    __m256d p = _mm256_fmadd_pd(p0, rr, p1);
    p = _mm256_fmadd_pd(p, rr, p2);
    p = _mm256_mul_pd(p, r);
    __m256d q = _mm256_fmadd_pd(q0, rr, q1);
    q = _mm256_fmadd_pd(q, rr, q2);
    q = _mm256_fmadd_pd(q, rr, q3);
    const __m256d er = _mm256_fmadd_pd(two, _mm256_div_pd(p, _mm256_sub_pd(q, p)), one);

    // 2^n via the exponent field; the clamp keeps n+1023 within [2, 2046],
    // so the result is always a normal double.
    const __m128i n32 = _mm256_cvtpd_epi32(n);
    const __m256i n64 = _mm256_cvtepi32_epi64(n32);
    const __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
    __m256d result = _mm256_mul_pd(er, _mm256_castsi256_pd(bits));

    result = _mm256_blendv_pd(result, _mm256_setzero_pd(), too_small);
    result = _mm256_blendv_pd(result, _mm256_set1_pd(profit::inf), too_big);
    return result;
}

}  // namespace

void vexp_avx2(const double* x, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, vexp4(_mm256_loadu_pd(x + i)));
    for (; i < n; ++i) out[i] = std::exp(x[i]);
}

void profile_scan_avx2(const Profile& p, const double* lambdas, double* out, std::size_t n) {
    const std::size_t m = p.s.size();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d lam = _mm256_loadu_pd(lambdas + i);
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t k = 0; k < m; ++k) {
            const __m256d x = _mm256_mul_pd(lam, _mm256_set1_pd(-p.s[k]));
            acc = _mm256_fmadd_pd(_mm256_set1_pd(p.a[k]), vexp4(x), acc);
        }
        _mm256_storeu_pd(out + i, acc);
    }
    if (i < n) profile_scan_scalar(p, lambdas + i, out + i, n - i);
}

}  // namespace profit::kernel::detail

#endif  // x86-64
