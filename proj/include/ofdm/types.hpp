#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace ofdm {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Time-domain complex samples. `origin` is the global index of samples[0];
/// phase-continuous impairments (CFO) key off it.
struct TimeSignal {
  std::vector<Complex> samples;
  std::int64_t origin = 0;

  TimeSignal() = default;
  explicit TimeSignal(std::vector<Complex> s, std::int64_t n0 = 0)
      : samples(std::move(s)), origin(n0) {}

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  Complex& operator[](std::size_t i) { return samples[i]; }
  const Complex& operator[](std::size_t i) const { return samples[i]; }
  std::span<const Complex> view() const { return samples; }
};

/// Frequency-domain symbols, one per subcarrier; bin 0 is DC.
struct Spectrum {
  std::vector<Complex> bins;

  Spectrum() = default;
  explicit Spectrum(std::vector<Complex> b) : bins(std::move(b)) {}
  explicit Spectrum(std::size_t n) : bins(n) {}

  std::size_t size() const { return bins.size(); }
  Complex& operator[](std::size_t i) { return bins[i]; }
  const Complex& operator[](std::size_t i) const { return bins[i]; }
  std::span<const Complex> view() const { return bins; }
};

using Bits = std::vector<std::uint8_t>;

}  // namespace ofdm
