#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ofdm/modem/ofdm_symbol.hpp"
#include "ofdm/simd/kernels.hpp"
#include "ofdm/transform.hpp"

namespace ofdm {

CyclicPrefixSpec::CyclicPrefixSpec(std::size_t n_fft, std::size_t guard_len)
    : n_fft_(n_fft), guard_len_(guard_len) {
  if (n_fft == 0) throw std::invalid_argument("CyclicPrefixSpec: n_fft must be >= 1");
  if (guard_len >= n_fft) {
    throw std::invalid_argument("CyclicPrefixSpec: guard length " + std::to_string(guard_len) +
                                " must be < n_fft " + std::to_string(n_fft));
  }
}

TimeSignal OfdmSymbol::samples() const {
  std::vector<Complex> out;
  out.reserve(size());
  out.insert(out.end(), prefix.samples.begin(), prefix.samples.end());
  out.insert(out.end(), useful.samples.begin(), useful.samples.end());
  return TimeSignal(std::move(out), prefix.origin);
}

TimeSignal ofdm_modulate(const Spectrum& X) { return ifft(X); }

Spectrum ofdm_demodulate(const TimeSignal& y) { return fft(y); }

OfdmSymbol add_cyclic_prefix(const TimeSignal& x, const CyclicPrefixSpec& spec) {
  if (x.size() != spec.n_fft()) {
    throw std::invalid_argument("add_cyclic_prefix: symbol has " + std::to_string(x.size()) +
                                " samples, expected " + std::to_string(spec.n_fft()));
  }
  const std::size_t ng = spec.guard_len();
  OfdmSymbol sym;
  sym.prefix = TimeSignal(
      std::vector<Complex>(x.samples.end() - static_cast<std::ptrdiff_t>(ng), x.samples.end()),
      x.origin);
  sym.useful = TimeSignal(x.samples, x.origin + static_cast<std::int64_t>(ng));
  return sym;
}

TimeSignal remove_cyclic_prefix(const TimeSignal& samples, const CyclicPrefixSpec& spec) {
  if (samples.size() != spec.symbol_len()) {
    throw std::invalid_argument("remove_cyclic_prefix: got " + std::to_string(samples.size()) +
                                " samples, expected " + std::to_string(spec.symbol_len()));
  }
  const auto ng = static_cast<std::ptrdiff_t>(spec.guard_len());
  return TimeSignal(std::vector<Complex>(samples.samples.begin() + ng, samples.samples.end()),
                    samples.origin + ng);
}

std::vector<double> raised_cosine_ramp(std::size_t rolloff_len) {
  std::vector<double> w(rolloff_len);
  for (std::size_t i = 0; i < rolloff_len; ++i) {
    w[i] = 0.5 * (1.0 - std::cos(kPi * static_cast<double>(i) / static_cast<double>(rolloff_len)));
  }
  return w;
}

TimeSignal apply_edge_window(const OfdmSymbol& sym, std::size_t rolloff_len) {
  if (rolloff_len > sym.prefix.size()) {
    throw std::invalid_argument("apply_edge_window: rolloff_len " + std::to_string(rolloff_len) +
                                " exceeds the guard length " + std::to_string(sym.prefix.size()));
  }
  TimeSignal out = sym.samples();
  if (rolloff_len == 0) return out;
  out.samples.insert(out.samples.end(), sym.useful.samples.begin(),
                     sym.useful.samples.begin() + static_cast<std::ptrdiff_t>(rolloff_len));
  const std::vector<double> up = raised_cosine_ramp(rolloff_len);
  std::vector<double> down(rolloff_len);
  std::transform(up.begin(), up.end(), down.begin(), [](double w) { return 1.0 - w; });
  std::span<Complex> all(out.samples);
  simd::scale_real(up, all.first(rolloff_len));
  simd::scale_real(down, all.last(rolloff_len));
  return out;
}

TimeSignal serialize_symbols(std::span<const TimeSignal> symbols, std::size_t hop) {
  if (symbols.empty()) return TimeSignal{};
  std::size_t total = 0;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    total = std::max(total, i * hop + symbols[i].size());
  }
  TimeSignal out(std::vector<Complex>(total), symbols.front().origin);
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    std::span<Complex> dst(out.samples.data() + i * hop, symbols[i].size());
    simd::caxpy(Complex{1.0, 0.0}, symbols[i].view(), dst);
  }
  return out;
}

}  // namespace ofdm
