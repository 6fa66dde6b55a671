#pragma once

// Transform pair with the 1/N factor on the FORWARD direction:
//
//   F(k) = (1/N) sum_n f(n) e^{-j 2 pi k n / N}
//   f(n) =       sum_k F(k) e^{+j 2 pi k n / N}
//
// Every module in the library uses this pair. The CFO kernel in
// analysis/ici.hpp depends on it; switching to the usual unscaled forward
// transform would introduce an N factor there.

#include <cstddef>
#include <vector>

#include "ofdm/types.hpp"

namespace ofdm {

/// Direct O(N^2) summation. Throws std::invalid_argument on empty input.
Spectrum dft(const TimeSignal& f);
TimeSignal idft(const Spectrum& F);

/// Radix-2 fast path; non-power-of-two sizes delegate to dft/idft.
Spectrum fft(const TimeSignal& f);
TimeSignal ifft(const Spectrum& F);

bool is_power_of_two(std::size_t n);

/// Reusable twiddle/bit-reversal tables for one size. Immutable after
/// construction, so one plan may be shared between threads.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);

  std::size_t size() const { return n_; }

  /// In-place transforms on a length-N buffer. `forward` applies 1/N.
  void forward(std::vector<Complex>& data) const;
  void inverse(std::vector<Complex>& data) const;

  Spectrum forward(const TimeSignal& f) const;
  TimeSignal inverse(const Spectrum& F) const;

 private:
  void transform(std::vector<Complex>& data, bool inverse) const;

  std::size_t n_;
  bool radix2_;
  std::vector<Complex> twiddles_;  // e^{-j 2 pi i / N}, i < N
  std::vector<std::size_t> bitrev_;
};

}  // namespace ofdm
