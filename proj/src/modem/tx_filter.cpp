#include "ofdm/modem/tx_filter.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ofdm/simd/kernels.hpp"

namespace ofdm {

std::vector<double> design_lowpass(std::size_t num_taps, double cutoff) {
  if (num_taps == 0 || num_taps % 2 == 0) {
    throw std::invalid_argument("tx_filter: num_taps must be odd, got " + std::to_string(num_taps));
  }
  if (!(cutoff > 0.0 && cutoff <= 0.5)) {
    throw std::invalid_argument("tx_filter: cutoff must be in (0, 0.5], got " + std::to_string(cutoff));
  }
  std::vector<double> h(num_taps);
  const double mid = static_cast<double>(num_taps - 1) / 2.0;
  for (std::size_t i = 0; i < num_taps; ++i) {
    const double t = static_cast<double>(i) - mid;
    const double sinc = t == 0.0 ? 2.0 * cutoff : std::sin(2.0 * kPi * cutoff * t) / (kPi * t);
    const double window =
        num_taps == 1 ? 1.0
                      : 0.54 - 0.46 * std::cos(2.0 * kPi * static_cast<double>(i) /
                                               static_cast<double>(num_taps - 1));
    h[i] = sinc * window;
  }
  const double dc = std::accumulate(h.begin(), h.end(), 0.0);
  for (auto& v : h) v /= dc;
  return h;
}

TimeSignal tx_filter(const TimeSignal& samples, std::size_t num_taps, double cutoff) {
  const std::vector<double> h = design_lowpass(num_taps, cutoff);
  TimeSignal out(std::vector<Complex>(samples.size() + num_taps - 1), samples.origin);
  for (std::size_t l = 0; l < num_taps; ++l) {
    std::span<Complex> dst(out.samples.data() + l, samples.size());
    simd::caxpy(Complex{h[l], 0.0}, samples.view(), dst);
  }
  return out;
}

TimeSignal compensate_delay(const TimeSignal& filtered, std::size_t delay, std::size_t length) {
  if (delay + length > filtered.size()) {
    throw std::invalid_argument("compensate_delay: requested range exceeds the signal");
  }
  const auto first = filtered.samples.begin() + static_cast<std::ptrdiff_t>(delay);
  return TimeSignal(std::vector<Complex>(first, first + static_cast<std::ptrdiff_t>(length)),
                    filtered.origin);
}

}  // namespace ofdm
