#pragma once

#include <cstddef>
#include <vector>

#include "ofdm/types.hpp"

namespace ofdm {

/// Hamming-windowed sinc low-pass, linear phase, taps normalized to unit DC
/// gain. cutoff in cycles/sample, 0 < cutoff <= 0.5; num_taps odd.
std::vector<double> design_lowpass(std::size_t num_taps, double cutoff);

/// Full linear convolution with design_lowpass(num_taps, cutoff): the output
/// has samples.size() + num_taps - 1 samples and lags by filter_delay().
TimeSignal tx_filter(const TimeSignal& samples, std::size_t num_taps, double cutoff);

constexpr std::size_t filter_delay(std::size_t num_taps) { return (num_taps - 1) / 2; }

/// Drops the leading group delay and keeps `length` samples.
TimeSignal compensate_delay(const TimeSignal& filtered, std::size_t delay, std::size_t length);

}  // namespace ofdm
