#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ofdm/types.hpp"

namespace ofdm {

/// Guard length Ng for an N-point symbol; 0 <= Ng < N.
class CyclicPrefixSpec {
 public:
  CyclicPrefixSpec(std::size_t n_fft, std::size_t guard_len);

  std::size_t n_fft() const { return n_fft_; }
  std::size_t guard_len() const { return guard_len_; }
  std::size_t symbol_len() const { return n_fft_ + guard_len_; }

 private:
  std::size_t n_fft_;
  std::size_t guard_len_;
};

/// One CP-extended symbol. prefix[i] == useful[N - Ng + i].
struct OfdmSymbol {
  TimeSignal useful;
  TimeSignal prefix;

  std::size_t size() const { return prefix.size() + useful.size(); }
  /// prefix followed by useful samples.
  TimeSignal samples() const;
};

/// x(n) = sum_k X(k) e^{j 2 pi k n / N}: the inverse transform, unscaled.
TimeSignal ofdm_modulate(const Spectrum& X);
/// Forward transform with the 1/N factor.
Spectrum ofdm_demodulate(const TimeSignal& y);

OfdmSymbol add_cyclic_prefix(const TimeSignal& x, const CyclicPrefixSpec& spec);
/// Keeps the last N of N + Ng samples.
TimeSignal remove_cyclic_prefix(const TimeSignal& samples, const CyclicPrefixSpec& spec);

/// Raised-cosine edge taper confined to the guard region.
///
/// Output is prefix | useful | postfix, where postfix repeats the first
/// rolloff_len useful samples (the cyclic continuation). The first
/// rolloff_len samples are multiplied by w(i) = 0.5 (1 - cos(pi i / R)) and
/// the postfix by 1 - w(i), so consecutive symbols overlapped by R samples
/// cross-fade with weights summing to one. The useful samples are untouched.
TimeSignal apply_edge_window(const OfdmSymbol& sym, std::size_t rolloff_len);

/// w(i) for i in [0, R); w(R) would be 1.
std::vector<double> raised_cosine_ramp(std::size_t rolloff_len);

/// Overlap-adds symbols placed every `hop` samples. Each symbol may be longer
/// than hop (windowed postfix); the result has (count - 1) * hop + last.size()
/// samples.
TimeSignal serialize_symbols(std::span<const TimeSignal> symbols, std::size_t hop);

}  // namespace ofdm
