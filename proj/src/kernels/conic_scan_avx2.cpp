#include "quadrica/kernels/conic_scan.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#endif

namespace quadrica::kernels {

#if defined(__x86_64__) || defined(__i386__)

__attribute__((target("avx2,fma")))
std::ptrdiff_t conic_scan_avx2(const double* as, std::size_t n, double A, double B, double C) {
    const __m256d va = _mm256_set1_pd(A);
    const __m256d vb = _mm256_set1_pd(B);
    const __m256d vc = _mm256_set1_pd(C);
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d a = _mm256_loadu_pd(as + i);
        // Exact: every partial value is an integer below 2^53.
        __m256d v = _mm256_fmadd_pd(_mm256_fmadd_pd(va, a, vb), a, vc);
        int mask = _mm256_movemask_pd(_mm256_cmp_pd(v, zero, _CMP_EQ_OQ));
        if (mask) return static_cast<std::ptrdiff_t>(i + static_cast<std::size_t>(__builtin_ctz(mask)));
    }
    for (; i < n; ++i) {
        const double a = as[i];
        if ((A * a + B) * a + C == 0.0) return static_cast<std::ptrdiff_t>(i);
    }
    return -1;
}

#else

std::ptrdiff_t conic_scan_avx2(const double* as, std::size_t n, double A, double B, double C) {
    return conic_scan_scalar(as, n, A, B, C);
}

#endif

}  // namespace quadrica::kernels
