#pragma once

#include <cstddef>

namespace quadrica::kernels {

/// Index of the first `a` in `as[0..n)` with A*a^2 + B*a + C == 0, or -1.
///
/// All inputs must be integers small enough that every intermediate value
/// stays below 2^53 in magnitude, so the double evaluation is exact.
using ConicScanFn = std::ptrdiff_t (*)(const double* as, std::size_t n, double A, double B, double C);

std::ptrdiff_t conic_scan_scalar(const double* as, std::size_t n, double A, double B, double C);

/// Only callable when `avx2_supported()` is true.
std::ptrdiff_t conic_scan_avx2(const double* as, std::size_t n, double A, double B, double C);

bool avx2_supported() noexcept;

/// Best variant for the running CPU. QUADRICA_FORCE_SCALAR=1 pins the
/// scalar reference.
ConicScanFn conic_scan() noexcept;
const char* conic_scan_variant() noexcept;

}  // namespace quadrica::kernels
