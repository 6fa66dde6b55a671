#include <cmath>
#include <stdexcept>
#include <string>

#include "ofdm/analysis.hpp"

namespace ofdm {

std::uint64_t bit_errors(std::span<const std::uint8_t> tx_bits, std::span<const std::uint8_t> rx_bits) {
  if (tx_bits.size() != rx_bits.size()) {
    throw std::invalid_argument("ber: length mismatch (" + std::to_string(tx_bits.size()) + " vs " +
                                std::to_string(rx_bits.size()) + ")");
  }
  std::uint64_t errors = 0;
  for (std::size_t i = 0; i < tx_bits.size(); ++i) errors += (tx_bits[i] & 1u) != (rx_bits[i] & 1u);
  return errors;
}

double ber(std::span<const std::uint8_t> tx_bits, std::span<const std::uint8_t> rx_bits) {
  const std::uint64_t errors = bit_errors(tx_bits, rx_bits);
  if (tx_bits.empty()) throw std::invalid_argument("ber: empty input");
  return static_cast<double>(errors) / static_cast<double>(tx_bits.size());
}

double evm(std::span<const Complex> rx_symbols, std::span<const Complex> ref_symbols) {
  if (rx_symbols.size() != ref_symbols.size()) {
    throw std::invalid_argument("evm: length mismatch (" + std::to_string(rx_symbols.size()) +
                                " vs " + std::to_string(ref_symbols.size()) + ")");
  }
  if (rx_symbols.empty()) throw std::invalid_argument("evm: empty input");
  double err = 0.0, ref = 0.0;
  for (std::size_t i = 0; i < rx_symbols.size(); ++i) {
    err += std::norm(rx_symbols[i] - ref_symbols[i]);
    ref += std::norm(ref_symbols[i]);
  }
  if (!(ref > 0.0)) throw std::invalid_argument("evm: reference has zero power");
  return std::sqrt(err / ref);
}

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

}  // namespace ofdm
