#pragma once

// Baseband impairments applied to the transmitted sample stream.

#include <cstddef>
#include <optional>
#include <vector>

#include "ofdm/rng.hpp"
#include "ofdm/types.hpp"

namespace ofdm {

/// Sample-spaced multipath taps; taps[0] is the direct path.
class ChannelProfile {
 public:
  /// Throws std::invalid_argument for an empty or all-zero tap list.
  explicit ChannelProfile(std::vector<Complex> taps);
  static ChannelProfile identity() { return ChannelProfile({Complex{1.0, 0.0}}); }

  const std::vector<Complex>& taps() const { return taps_; }
  /// tau_max in samples, len(taps) - 1.
  std::size_t max_excess_delay_samples() const { return taps_.size() - 1; }

  /// Unscaled DFT of the taps zero-padded to n: H(k) = sum_l h(l) e^{-j 2 pi k l / n}.
  /// This is the one-tap equalizer response under the library's scaled forward
  /// transform. Requires len(taps) <= n.
  std::vector<Complex> frequency_response(std::size_t n) const;

 private:
  std::vector<Complex> taps_;
};

struct ImpairmentConfig {
  double epsilon = 0.0;                    // CFO, fraction of subcarrier spacing
  double phase_noise_sigma = 0.0;          // Wiener increment std, rad/sample
  std::optional<double> snr_db;            // nullopt: no AWGN
  std::optional<ChannelProfile> profile;   // nullopt: identity channel

  /// Throws std::invalid_argument when phase_noise_sigma < 0 or a value is not finite.
  void validate() const;
};

/// Streaming linear convolution. Keeps the last len(taps)-1 inputs so
/// consecutive blocks behave as one continuous stream; output length equals
/// input length.
class MultipathChannel {
 public:
  explicit MultipathChannel(ChannelProfile profile);

  TimeSignal process(const TimeSignal& x);
  void reset();
  const ChannelProfile& profile() const { return profile_; }

 private:
  ChannelProfile profile_;
  std::vector<Complex> history_;  // most recent inputs, oldest first
};

/// Fresh-state convolution, truncated to x.size().
TimeSignal apply_multipath(const TimeSignal& x, const ChannelProfile& profile);

/// y(n) = x(n) e^{j 2 pi eps (origin + n) / N}. Phase continues across
/// blocks through TimeSignal::origin.
TimeSignal apply_cfo(const TimeSignal& x, double epsilon, std::size_t n_fft);

/// Wiener phase noise: phi(n) = phi(n-1) + sigma g(n), phi(-1) = 0.
TimeSignal apply_phase_noise(const TimeSignal& x, double sigma, RngStream& stream);

/// Adds complex Gaussian noise with per-component variance n0 / 2.
TimeSignal add_noise(const TimeSignal& x, double n0, RngStream& stream);

/// n0 = P / 10^(snr_db / 10) with P the measured mean power of x.
/// Throws std::invalid_argument when x has zero power.
TimeSignal apply_awgn(const TimeSignal& x, double snr_db, RngStream& stream);

double mean_power(const TimeSignal& x);

}  // namespace ofdm
