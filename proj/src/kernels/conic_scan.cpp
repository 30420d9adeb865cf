#include "quadrica/kernels/conic_scan.hpp"

#include <cstdlib>
#include <cstring>

namespace quadrica::kernels {

std::ptrdiff_t conic_scan_scalar(const double* as, std::size_t n, double A, double B, double C) {
    for (std::size_t i = 0; i < n; ++i) {
        const double a = as[i];
        if ((A * a + B) * a + C == 0.0) return static_cast<std::ptrdiff_t>(i);
    }
    return -1;
}

bool avx2_supported() noexcept {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {

bool force_scalar() noexcept {
    const char* v = std::getenv("QUADRICA_FORCE_SCALAR");
    return v && std::strcmp(v, "0") != 0 && *v != '\0';
}

}  // namespace

ConicScanFn conic_scan() noexcept {
    static const ConicScanFn fn = (!force_scalar() && avx2_supported()) ? &conic_scan_avx2 : &conic_scan_scalar;
    return fn;
}

const char* conic_scan_variant() noexcept {
    return conic_scan() == &conic_scan_scalar ? "scalar" : "avx2";
}

}  // namespace quadrica::kernels
