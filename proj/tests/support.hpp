#pragma once

// Independent oracles for the unit tests. Nothing here calls into the
// library's transforms or RNG so a bug there cannot hide itself.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "ofdm/types.hpp"

namespace testing {

using ofdm::Complex;

inline std::vector<Complex> random_complex(std::size_t n, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> v(n);
  for (auto& x : v) x = {u(gen), u(gen)};
  return v;
}

inline std::vector<std::uint8_t> random_bits(std::size_t n, unsigned seed) {
  std::mt19937 gen(seed);
  std::vector<std::uint8_t> b(n);
  for (auto& x : b) x = static_cast<std::uint8_t>(gen() & 1u);
  return b;
}

// Long-double direct sums of the scaled-forward / unscaled-inverse pair.
inline std::vector<Complex> direct_dft(const std::vector<Complex>& f) {
  const std::size_t n = f.size();
  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<long double> acc{};
    for (std::size_t i = 0; i < n; ++i) {
      const long double ph = -2.0L * 3.14159265358979323846264338327950288L *
                             static_cast<long double>((k * i) % n) / static_cast<long double>(n);
      acc += std::complex<long double>(f[i].real(), f[i].imag()) * std::complex<long double>(std::cos(ph), std::sin(ph));
    }
    acc /= static_cast<long double>(n);
    out[k] = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
  }
  return out;
}

inline std::vector<Complex> direct_idft(const std::vector<Complex>& F) {
  const std::size_t n = F.size();
  std::vector<Complex> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::complex<long double> acc{};
    for (std::size_t k = 0; k < n; ++k) {
      const long double ph = 2.0L * 3.14159265358979323846264338327950288L *
                             static_cast<long double>((k * i) % n) / static_cast<long double>(n);
      acc += std::complex<long double>(F[k].real(), F[k].imag()) * std::complex<long double>(std::cos(ph), std::sin(ph));
    }
    out[i] = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
  }
  return out;
}

inline double max_abs_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double m = a.size() == b.size() ? 0.0 : INFINITY;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double l2(const std::vector<Complex>& a) {
  double s = 0.0;
  for (const auto& x : a) s += std::norm(x);
  return std::sqrt(s);
}

// y = h (*) x, linear, truncated to |x|, zero initial state.
inline std::vector<Complex> linear_conv(const std::vector<Complex>& x, const std::vector<Complex>& h) {
  std::vector<Complex> y(x.size());
  for (std::size_t n = 0; n < x.size(); ++n)
    for (std::size_t l = 0; l < h.size() && l <= n; ++l) y[n] += h[l] * x[n - l];
  return y;
}

inline std::vector<Complex> circular_conv(const std::vector<Complex>& x, const std::vector<Complex>& h) {
  const std::size_t n = x.size();
  std::vector<Complex> y(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < h.size(); ++l) y[i] += h[l] * x[(i + n - l % n) % n];
  return y;
}

inline double q_oracle(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

}  // namespace testing
