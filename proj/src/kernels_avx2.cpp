// AVX2+FMA variants of the batch kernels.  Compiled only when the toolchain
// accepts -mavx2 -mfma; runtime selection lives in kernels_dispatch.cpp.

#include "dunkl/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <cmath>
#include <cstring>
#include <vector>

namespace dunkl {
namespace avx2_kernels {

namespace {

// exp(x) for 4 doubles, Cody-Waite reduction plus the Cephes rational
// approximant.  Out-of-range lanes are fixed up to 0 / inf at the end.
inline __m256d exp4(__m256d x) {
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
    const __m256d c1 = _mm256_set1_pd(6.93145751953125e-1);
    const __m256d c2 = _mm256_set1_pd(1.42860682030941723212e-6);
    const __m256d p0 = _mm256_set1_pd(1.26177193074810590878e-4);
    const __m256d p1 = _mm256_set1_pd(3.02994407707441961300e-2);
    const __m256d p2 = _mm256_set1_pd(9.99999999999999999910e-1);
    const __m256d q0 = _mm256_set1_pd(3.00198505138664455042e-6);
    const __m256d q1 = _mm256_set1_pd(2.52448340349684104192e-3);
    const __m256d q2 = _mm256_set1_pd(2.27265548208155028766e-1);
    const __m256d q3 = _mm256_set1_pd(2.00000000000000000005e0);
    const __m256d lo = _mm256_set1_pd(-708.396418532264);
    const __m256d hi = _mm256_set1_pd(709.782712893384);

    const __m256d mask_lo = _mm256_cmp_pd(x, lo, _CMP_LT_OQ);
    const __m256d mask_hi = _mm256_cmp_pd(x, hi, _CMP_GT_OQ);
    __m256d xc = _mm256_min_pd(_mm256_max_pd(x, lo), hi);

    __m256d n = _mm256_round_pd(_mm256_mul_pd(xc, log2e),
                                _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(n, c1, xc);
    r = _mm256_fnmadd_pd(n, c2, r);
    const __m256d rr = _mm256_mul_pd(r, r);

    __m256d px = _mm256_fmadd_pd(p0, rr, p1);
    px = _mm256_fmadd_pd(px, rr, p2);
    px = _mm256_mul_pd(px, r);
    __m256d qx = _mm256_fmadd_pd(q0, rr, q1);
    qx = _mm256_fmadd_pd(qx, rr, q2);
    qx = _mm256_fmadd_pd(qx, rr, q3);
    __m256d e = _mm256_div_pd(px, _mm256_sub_pd(qx, px));
    e = _mm256_fmadd_pd(_mm256_set1_pd(2.0), e, _mm256_set1_pd(1.0));

    // scale by 2^n via the exponent field
    const __m128i n32 = _mm256_cvtpd_epi32(n);
    const __m256i n64 = _mm256_cvtepi32_epi64(n32);
    const __m256i expo = _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
    e = _mm256_mul_pd(e, _mm256_castsi256_pd(expo));

    e = _mm256_blendv_pd(e, _mm256_setzero_pd(), mask_lo);
    e = _mm256_blendv_pd(e, _mm256_set1_pd(HUGE_VAL), mask_hi);
    return e;
}

}  // namespace

void exp_batch(const double* x, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, exp4(_mm256_loadu_pd(x + i)));
    if (i < n) {
        alignas(32) double buf[4] = {0, 0, 0, 0};
        std::memcpy(buf, x + i, (n - i) * sizeof(double));
        alignas(32) double res[4];
        _mm256_store_pd(res, exp4(_mm256_load_pd(buf)));
        std::memcpy(out + i, res, (n - i) * sizeof(double));
    }
}

void jacobi_series(const JacobiRecurrence& rec, const double* coeff, int nc, const double* x,
                   double* out, std::size_t n) {
    const double* A = rec.A.data();
    const double* B = rec.B.data();
    const double* C = rec.C.data();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xv = _mm256_loadu_pd(x + i);
        __m256d pm1 = _mm256_setzero_pd();
        __m256d pc = _mm256_set1_pd(rec.p0);
        __m256d acc = _mm256_mul_pd(_mm256_set1_pd(coeff[0]), pc);
        for (int j = 1; j < nc; ++j) {
            const __m256d t = _mm256_fmadd_pd(_mm256_set1_pd(A[j - 1]), xv,
                                              _mm256_set1_pd(B[j - 1]));
            const __m256d pn =
                _mm256_fnmadd_pd(_mm256_set1_pd(C[j - 1]), pm1, _mm256_mul_pd(t, pc));
            pm1 = pc;
            pc = pn;
            acc = _mm256_fmadd_pd(_mm256_set1_pd(coeff[j]), pc, acc);
        }
        _mm256_storeu_pd(out + i, acc);
    }
    if (i < n) kernels_scalar().jacobi_series(rec, coeff, nc, x + i, out + i, n - i);
}

void jacobi_moments(const JacobiRecurrence& rec, int nm, const double* x, const double* w,
                    std::size_t n, double* moments) {
    const double* A = rec.A.data();
    const double* B = rec.B.data();
    const double* C = rec.C.data();
    std::vector<double> acc(4 * static_cast<std::size_t>(nm), 0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xv = _mm256_loadu_pd(x + i);
        const __m256d wv = _mm256_loadu_pd(w + i);
        __m256d pm1 = _mm256_setzero_pd();
        __m256d pc = _mm256_set1_pd(rec.p0);
        _mm256_storeu_pd(acc.data(), _mm256_fmadd_pd(wv, pc, _mm256_loadu_pd(acc.data())));
        for (int j = 1; j < nm; ++j) {
            const __m256d t = _mm256_fmadd_pd(_mm256_set1_pd(A[j - 1]), xv,
                                              _mm256_set1_pd(B[j - 1]));
            const __m256d pn =
                _mm256_fnmadd_pd(_mm256_set1_pd(C[j - 1]), pm1, _mm256_mul_pd(t, pc));
            pm1 = pc;
            pc = pn;
            double* slot = acc.data() + 4 * j;
            _mm256_storeu_pd(slot, _mm256_fmadd_pd(wv, pc, _mm256_loadu_pd(slot)));
        }
    }
    for (int j = 0; j < nm; ++j) {
        const double* lanes = acc.data() + 4 * j;
        moments[j] = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    }
    if (i < n) {
        std::vector<double> tail(nm);
        kernels_scalar().jacobi_moments(rec, nm, x + i, w + i, n - i, tail.data());
        for (int j = 0; j < nm; ++j) moments[j] += tail[j];
    }
}

}  // namespace avx2_kernels

const KernelOps* kernels_avx2_impl() {
    static const KernelOps ops{"avx2", &avx2_kernels::jacobi_series,
                               &avx2_kernels::jacobi_moments, &avx2_kernels::exp_batch};
    return &ops;
}

}  // namespace dunkl

#else

namespace dunkl {
const KernelOps* kernels_avx2_impl() { return nullptr; }
}  // namespace dunkl

#endif
