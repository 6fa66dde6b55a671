#include <cmath>

#include "kernels_impl.hpp"

namespace ofdm::simd::detail {

// Written out by component so the rounding sequence is exactly the one the
// AVX2 variant reproduces (no library complex multiply with NaN recovery).

void cmul_scalar(const Complex* a, const Complex* b, Complex* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    out[i] = {ar * br - ai * bi, ai * br + ar * bi};
  }
}

void caxpy_scalar(Complex h, const Complex* x, Complex* y, std::size_t n) {
  const double hr = h.real(), hi = h.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = {y[i].real() + (xr * hr - xi * hi), y[i].imag() + (xi * hr + xr * hi)};
  }
}

void scale_real_scalar(const double* w, Complex* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] = {x[i].real() * w[i], x[i].imag() * w[i]};
}

void axpy_real_scalar(double s, const Complex* g, Complex* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = {y[i].real() + s * g[i].real(), y[i].imag() + s * g[i].imag()};
  }
}

PowerStats power_stats_scalar(const Complex* x, std::size_t n) {
  PowerStats st;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    st.sum += p;
    if (p > st.peak) st.peak = p;
  }
  return st;
}

void clip_magnitude_scalar(Complex* x, std::size_t n, double limit) {
  const double limit2 = limit * limit;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    if (p > limit2) {
      const double g = limit / std::sqrt(p);
      x[i] = {x[i].real() * g, x[i].imag() * g};
    }
  }
}

}  // namespace ofdm::simd::detail

namespace ofdm::simd {

const KernelTable& scalar_kernels() {
  static const KernelTable table{
      "scalar",
      detail::cmul_scalar,
      detail::caxpy_scalar,
      detail::scale_real_scalar,
      detail::axpy_real_scalar,
      detail::power_stats_scalar,
      detail::clip_magnitude_scalar,
  };
  return table;
}

}  // namespace ofdm::simd
