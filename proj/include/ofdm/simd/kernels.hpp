#pragma once

// Data-parallel inner loops shared by the channel, modem and analysis code.
//
// Each kernel has a scalar reference and, on x86-64, an AVX2 variant. The
// variant is chosen once per process: OFDMKIT_SIMD=scalar|avx2 forces one,
// otherwise AVX2 is used when the CPU reports it.
//
// Elementwise kernels (cmul, caxpy, scale_real, axpy_real, clip_magnitude)
// perform the same IEEE operations in the same order in every variant and are
// bit-identical. power_stats reorders the sum and agrees to rounding.

#include <cstddef>
#include <span>
#include <string_view>

#include "ofdm/types.hpp"

namespace ofdm::simd {

struct PowerStats {
  double sum = 0.0;   // sum |x|^2
  double peak = 0.0;  // max |x|^2
};

struct KernelTable {
  std::string_view name;
  // out[i] = a[i] * b[i]; out may alias a.
  void (*cmul)(const Complex* a, const Complex* b, Complex* out, std::size_t n);
  // y[i] += h * x[i]
  void (*caxpy)(Complex h, const Complex* x, Complex* y, std::size_t n);
  // x[i] *= w[i]
  void (*scale_real)(const double* w, Complex* x, std::size_t n);
  // y[i] += s * g[i]
  void (*axpy_real)(double s, const Complex* g, Complex* y, std::size_t n);
  PowerStats (*power_stats)(const Complex* x, std::size_t n);
  // |x[i]|^2 > limit^2 -> x[i] *= limit / |x[i]|
  void (*clip_magnitude)(Complex* x, std::size_t n, double limit);
};

const KernelTable& scalar_kernels();
/// nullptr when not compiled in or not supported by this CPU.
const KernelTable* avx2_kernels();
/// Process-wide selection (see header comment).
const KernelTable& active_kernels();

// Span conveniences over active_kernels().
void cmul(std::span<const Complex> a, std::span<const Complex> b, std::span<Complex> out);
void caxpy(Complex h, std::span<const Complex> x, std::span<Complex> y);
void scale_real(std::span<const double> w, std::span<Complex> x);
void axpy_real(double s, std::span<const Complex> g, std::span<Complex> y);
PowerStats power_stats(std::span<const Complex> x);
void clip_magnitude(std::span<Complex> x, double limit);

}  // namespace ofdm::simd
