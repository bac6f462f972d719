#pragma once

// Raw entry points of the AVX2 translation unit. That unit is compiled
// with -mavx2 -mfma, so it must only be called after a runtime CPU check,
// and its interface stays free of std templates.

#include <cstddef>

namespace trilayer::simd::detail {

void oscillatory_sums_avx2_raw(const double* omega, const double* a, const double* b,
                               const double* ea, const double* eb, std::size_t n,
                               std::size_t panel_size, double t, double* out3);

void sincos_avx2_raw(const double* x, double* s, double* c, std::size_t n);

}  // namespace trilayer::simd::detail
