#pragma once

#include "ofdm/simd/kernels.hpp"

namespace ofdm::simd::detail {

void cmul_scalar(const Complex* a, const Complex* b, Complex* out, std::size_t n);
void caxpy_scalar(Complex h, const Complex* x, Complex* y, std::size_t n);
void scale_real_scalar(const double* w, Complex* x, std::size_t n);
void axpy_real_scalar(double s, const Complex* g, Complex* y, std::size_t n);
PowerStats power_stats_scalar(const Complex* x, std::size_t n);
void clip_magnitude_scalar(Complex* x, std::size_t n, double limit);

#if defined(OFDMKIT_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

}  // namespace ofdm::simd::detail
