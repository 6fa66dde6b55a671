#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ofdm/types.hpp"

namespace ofdm {

enum class Scheme { kBpsk, kQpsk, kQam16, kQam64 };

std::string_view to_string(Scheme s);
/// Accepts "BPSK", "QPSK", "16QAM", "64QAM" (case-insensitive).
std::optional<Scheme> parse_scheme(std::string_view name);

/// Gray-labeled, unit-average-power constellation.
///
/// A label is the integer formed by the symbol's bits, first bit most
/// significant. For the QAM grids the first half of the bits selects the
/// in-phase level and the second half the quadrature level; on each axis
/// level index i (amplitude L-1-2i, L levels) carries label i ^ (i >> 1).
/// A zero bit therefore maps to the positive side: BPSK 0 -> +1, 1 -> -1;
/// QPSK (b0, b1) -> ((1-2 b0) + j (1-2 b1)) / sqrt(2).
class Constellation {
 public:
  static const Constellation& get(Scheme s);

  Scheme scheme() const { return scheme_; }
  std::string_view name() const { return to_string(scheme_); }
  unsigned bits_per_symbol() const { return bits_; }
  std::size_t size() const { return points_.size(); }
  /// points()[label]
  std::span<const Complex> points() const { return points_; }

  /// Hard decision: label of the Euclidean-nearest point. Equidistant points
  /// resolve to the lowest label, e.g. QPSK 0+0j -> label 0.
  unsigned nearest_label(Complex y) const;

 private:
  explicit Constellation(Scheme s);

  Scheme scheme_;
  unsigned bits_;
  std::vector<Complex> points_;
};

/// Throws std::invalid_argument when bits.size() is not a multiple of
/// bits_per_symbol.
std::vector<Complex> map_bits(std::span<const std::uint8_t> bits, const Constellation& c);
Bits demap_symbols(std::span<const Complex> symbols, const Constellation& c);

}  // namespace ofdm
