// AVX2/FMA kernel variants. This translation unit is compiled with
// -mavx2 -mfma and must only be entered after a runtime cpuid check;
// usable() is that check.

#include "platefsi/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#endif

#include <cmath>

namespace platefsi::kernels::avx2 {

#if defined(__x86_64__) || defined(_M_X64)

bool compiled() { return true; }

bool usable() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

double dot(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    __m256d acc2 = _mm256_setzero_pd();
    __m256d acc3 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
        acc2 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 8), _mm256_loadu_pd(b + i + 8), acc2);
        acc3 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 12), _mm256_loadu_pd(b + i + 12), acc3);
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    }
    acc0 = _mm256_add_pd(_mm256_add_pd(acc0, acc1), _mm256_add_pd(acc2, acc3));
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc0);
    double s = (lane[0] + lane[1]) + (lane[2] + lane[3]);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256d y0 = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        __m256d y1 = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4));
        _mm256_storeu_pd(y + i, y0);
        _mm256_storeu_pd(y + i + 4, y1);
    }
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void combine(double* out, const double* a, double beta, const double* b,
             std::size_t n) {
    const __m256d vb = _mm256_set1_pd(beta);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(out + i, _mm256_fmadd_pd(vb, _mm256_loadu_pd(b + i), _mm256_loadu_pd(a + i)));
    }
    for (; i < n; ++i) out[i] = a[i] + beta * b[i];
}

void scale(double alpha, double* x, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    }
    for (; i < n; ++i) x[i] *= alpha;
}

double max_abs(const double* x, std::size_t n) {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    __m256d vm = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        vm = _mm256_max_pd(vm, _mm256_andnot_pd(sign_mask, _mm256_loadu_pd(x + i)));
    }
    alignas(32) double lane[4];
    _mm256_store_pd(lane, vm);
    double m = std::max(std::max(lane[0], lane[1]), std::max(lane[2], lane[3]));
    for (; i < n; ++i) m = std::max(m, std::fabs(x[i]));
    return m;
}

#endif  // x86-64

}  // namespace platefsi::kernels::avx2
