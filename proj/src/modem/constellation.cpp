#include "ofdm/modem/constellation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ofdm {
namespace {

unsigned bits_for(Scheme s) {
  switch (s) {
    case Scheme::kBpsk: return 1;
    case Scheme::kQpsk: return 2;
    case Scheme::kQam16: return 4;
    case Scheme::kQam64: return 6;
  }
  return 0;
}

// Amplitude of the PAM level whose Gray label is `label`, L = 2^bits levels.
double gray_pam_level(unsigned label, unsigned bits) {
  unsigned index = label;
  for (unsigned shift = label >> 1; shift != 0; shift >>= 1) index ^= shift;
  const int levels = 1 << bits;
  return static_cast<double>(levels - 1 - 2 * static_cast<int>(index));
}

}  // namespace

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::kBpsk: return "BPSK";
    case Scheme::kQpsk: return "QPSK";
    case Scheme::kQam16: return "16QAM";
    case Scheme::kQam64: return "64QAM";
  }
  return "?";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (Scheme s : {Scheme::kBpsk, Scheme::kQpsk, Scheme::kQam16, Scheme::kQam64}) {
    if (upper == to_string(s)) return s;
  }
  return std::nullopt;
}

Constellation::Constellation(Scheme s) : scheme_(s), bits_(bits_for(s)) {
  const std::size_t m = std::size_t{1} << bits_;
  points_.resize(m);
  if (s == Scheme::kBpsk) {
    points_[0] = {1.0, 0.0};
    points_[1] = {-1.0, 0.0};
    return;
  }
  const unsigned axis_bits = bits_ / 2;
  const unsigned axis_mask = (1u << axis_bits) - 1;
  const double levels = static_cast<double>(1u << axis_bits);
  // Mean power of the square grid: 2 (L^2 - 1) / 3.
  const double scale = 1.0 / std::sqrt(2.0 * (levels * levels - 1.0) / 3.0);
  for (unsigned label = 0; label < m; ++label) {
    const double i = gray_pam_level(label >> axis_bits, axis_bits);
    const double q = gray_pam_level(label & axis_mask, axis_bits);
    points_[label] = {i * scale, q * scale};
  }
}

const Constellation& Constellation::get(Scheme s) {
  static const Constellation bpsk(Scheme::kBpsk);
  static const Constellation qpsk(Scheme::kQpsk);
  static const Constellation qam16(Scheme::kQam16);
  static const Constellation qam64(Scheme::kQam64);
  switch (s) {
    case Scheme::kBpsk: return bpsk;
    case Scheme::kQpsk: return qpsk;
    case Scheme::kQam16: return qam16;
    case Scheme::kQam64: return qam64;
  }
  throw std::invalid_argument("unknown scheme");
}

unsigned Constellation::nearest_label(Complex y) const {
  unsigned best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (unsigned label = 0; label < points_.size(); ++label) {
    const double d = std::norm(y - points_[label]);
    if (d < best_d) {
      best_d = d;
      best = label;
    }
  }
  return best;
}

std::vector<Complex> map_bits(std::span<const std::uint8_t> bits, const Constellation& c) {
  const unsigned k = c.bits_per_symbol();
  if (bits.size() % k != 0) {
    throw std::invalid_argument("map_bits: " + std::to_string(bits.size()) +
                                " bits is not a multiple of " + std::to_string(k));
  }
  std::vector<Complex> out(bits.size() / k);
  for (std::size_t s = 0; s < out.size(); ++s) {
    unsigned label = 0;
    for (unsigned b = 0; b < k; ++b) label = (label << 1) | (bits[s * k + b] & 1u);
    out[s] = c.points()[label];
  }
  return out;
}

Bits demap_symbols(std::span<const Complex> symbols, const Constellation& c) {
  const unsigned k = c.bits_per_symbol();
  Bits out(symbols.size() * k);
  for (std::size_t s = 0; s < symbols.size(); ++s) {
    const unsigned label = c.nearest_label(symbols[s]);
    for (unsigned b = 0; b < k; ++b) {
      out[s * k + b] = static_cast<std::uint8_t>((label >> (k - 1 - b)) & 1u);
    }
  }
  return out;
}

}  // namespace ofdm
