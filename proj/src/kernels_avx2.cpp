// AVX2 kernel variants. This translation unit is compiled with -mavx2; all
// other code must reach it only through the dispatch table after the runtime
// cpuid check.

#include "rassim/kernels.hpp"

#ifdef RASSIM_HAVE_AVX2

#include <immintrin.h>

namespace rassim::kernels {

namespace {

// std::complex<double> is layout-compatible with double[2]; one __m256d holds
// two complex values as [re0, im0, re1, im1].

inline __m256d cmul(__m256d a, __m256d b) {
    const __m256d a_re = _mm256_movedup_pd(a);           // [ar0, ar0, ar1, ar1]
    const __m256d a_im = _mm256_permute_pd(a, 0xF);      // [ai0, ai0, ai1, ai1]
    const __m256d b_sw = _mm256_permute_pd(b, 0x5);      // [bi0, br0, bi1, br1]
    // even: ar*br - ai*bi, odd: ar*bi + ai*br
    return _mm256_addsub_pd(_mm256_mul_pd(a_re, b), _mm256_mul_pd(a_im, b_sw));
}

inline __m256d conj2(__m256d a) {
    const __m256d mask = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
    return _mm256_xor_pd(a, mask);
}

cplx cdotc_avx2(const cplx* a, const cplx* b, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d va0 = _mm256_loadu_pd(pa + 2 * i);
        const __m256d vb0 = _mm256_loadu_pd(pb + 2 * i);
        const __m256d va1 = _mm256_loadu_pd(pa + 2 * i + 4);
        const __m256d vb1 = _mm256_loadu_pd(pb + 2 * i + 4);
        acc0 = _mm256_add_pd(acc0, cmul(conj2(va0), vb0));
        acc1 = _mm256_add_pd(acc1, cmul(conj2(va1), vb1));
    }
    if (i + 2 <= n) {
        const __m256d va = _mm256_loadu_pd(pa + 2 * i);
        const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        acc0 = _mm256_add_pd(acc0, cmul(conj2(va), vb));
        i += 2;
    }
    const __m256d acc = _mm256_add_pd(acc0, acc1);
    const __m128d lo = _mm256_castpd256_pd128(acc);
    const __m128d hi = _mm256_extractf128_pd(acc, 1);
    const __m128d sum = _mm_add_pd(lo, hi);
    alignas(16) double out[2];
    _mm_store_pd(out, sum);
    cplx r{out[0], out[1]};
    for (; i < n; ++i) r += std::conj(a[i]) * b[i];
    return r;
}

double norm2_avx2(const cplx* a, std::size_t n) {
    // |re|^2 + |im|^2 summed over all entries = plain sum of squares of the
    // flat double view.
    const double* p = reinterpret_cast<const double*>(a);
    const std::size_t m = 2 * n;
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= m; i += 8) {
        const __m256d v0 = _mm256_loadu_pd(p + i);
        const __m256d v1 = _mm256_loadu_pd(p + i + 4);
        acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(v0, v0));
        acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(v1, v1));
    }
    for (; i + 4 <= m; i += 4) {
        const __m256d v = _mm256_loadu_pd(p + i);
        acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(v, v));
    }
    const __m256d acc = _mm256_add_pd(acc0, acc1);
    const __m128d lo = _mm256_castpd256_pd128(acc);
    const __m128d hi = _mm256_extractf128_pd(acc, 1);
    alignas(16) double out[2];
    _mm_store_pd(out, _mm_add_pd(lo, hi));
    double s = out[0] + out[1];
    for (; i < m; ++i) s += p[i] * p[i];
    return s;
}

void axpy_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    const __m256d va = _mm256_set_pd(alpha.imag(), alpha.real(), alpha.imag(), alpha.real());
    const double* px = reinterpret_cast<const double*>(x);
    double* py = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vx = _mm256_loadu_pd(px + 2 * i);
        const __m256d vy = _mm256_loadu_pd(py + 2 * i);
        _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(vy, cmul(va, vx)));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    const __m256d va = _mm256_set_pd(alpha.imag(), alpha.real(), alpha.imag(), alpha.real());
    const double* px = reinterpret_cast<const double*>(x);
    double* py = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vx = _mm256_loadu_pd(px + 2 * i);
        _mm256_storeu_pd(py + 2 * i, cmul(va, vx));
    }
    for (; i < n; ++i) y[i] = alpha * x[i];
}

void hadamard_avx2(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    double* po = reinterpret_cast<double*>(out);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(pa + 2 * i);
        const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        _mm256_storeu_pd(po + 2 * i, cmul(va, vb));
    }
    for (; i < n; ++i) out[i] = a[i] * b[i];
}

const Backend kAvx2{"avx2", cdotc_avx2, norm2_avx2, axpy_avx2, scale_avx2, hadamard_avx2};

}  // namespace

const Backend* avx2_backend() {
    return __builtin_cpu_supports("avx2") ? &kAvx2 : nullptr;
}

}  // namespace rassim::kernels

#endif  // RASSIM_HAVE_AVX2
