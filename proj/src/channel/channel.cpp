#include "ofdm/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ofdm/simd/kernels.hpp"

namespace ofdm {

ChannelProfile::ChannelProfile(std::vector<Complex> taps) : taps_(std::move(taps)) {
  if (taps_.empty()) throw std::invalid_argument("ChannelProfile: at least one tap is required");
  const bool all_zero =
      std::all_of(taps_.begin(), taps_.end(), [](Complex h) { return h == Complex{}; });
  if (all_zero) throw std::invalid_argument("ChannelProfile: taps are all zero");
  for (const Complex& h : taps_) {
    if (!std::isfinite(h.real()) || !std::isfinite(h.imag()))
      throw std::invalid_argument("ChannelProfile: non-finite tap");
  }
}

std::vector<Complex> ChannelProfile::frequency_response(std::size_t n) const {
  if (taps_.size() > n) {
    throw std::invalid_argument("frequency_response: " + std::to_string(taps_.size()) +
                                " taps exceed transform length " + std::to_string(n));
  }
  std::vector<Complex> H(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex acc{};
    for (std::size_t l = 0; l < taps_.size(); ++l) {
      const std::size_t idx = (k * l) % n;
      const double phase = -2.0 * kPi * static_cast<double>(idx) / static_cast<double>(n);
      acc += taps_[l] * Complex{std::cos(phase), std::sin(phase)};
    }
    H[k] = acc;
  }
  return H;
}

void ImpairmentConfig::validate() const {
  if (!std::isfinite(epsilon)) throw std::invalid_argument("epsilon must be finite");
  if (!std::isfinite(phase_noise_sigma) || phase_noise_sigma < 0.0)
    throw std::invalid_argument("phase_noise_sigma must be >= 0");
  if (snr_db && !std::isfinite(*snr_db)) throw std::invalid_argument("snr_db must be finite");
}

MultipathChannel::MultipathChannel(ChannelProfile profile)
    : profile_(std::move(profile)), history_(profile_.taps().size() - 1) {}

void MultipathChannel::reset() { std::fill(history_.begin(), history_.end(), Complex{}); }

TimeSignal MultipathChannel::process(const TimeSignal& x) {
  const auto& h = profile_.taps();
  const std::size_t mem = history_.size();
  const std::size_t n = x.size();
  // Extended input: [history | x]; y(n) = sum_l h(l) ext(mem + n - l).
  std::vector<Complex> ext;
  ext.reserve(mem + n);
  ext.insert(ext.end(), history_.begin(), history_.end());
  ext.insert(ext.end(), x.samples.begin(), x.samples.end());

  TimeSignal y(std::vector<Complex>(n), x.origin);
  for (std::size_t l = 0; l < h.size(); ++l) {
    std::span<const Complex> src(ext.data() + mem - l, n);
    simd::caxpy(h[l], src, y.samples);
  }
  if (mem > 0) std::copy(ext.end() - static_cast<std::ptrdiff_t>(mem), ext.end(), history_.begin());
  return y;
}

TimeSignal apply_multipath(const TimeSignal& x, const ChannelProfile& profile) {
  MultipathChannel ch(profile);
  return ch.process(x);
}

TimeSignal apply_cfo(const TimeSignal& x, double epsilon, std::size_t n_fft) {
  if (n_fft == 0) throw std::invalid_argument("apply_cfo: N must be >= 1");
  if (epsilon == 0.0) return x;
  std::vector<Complex> rot(x.size());
  const double step = 2.0 * kPi * epsilon / static_cast<double>(n_fft);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double n = static_cast<double>(x.origin + static_cast<std::int64_t>(i));
    rot[i] = std::polar(1.0, step * n);
  }
  TimeSignal y(std::vector<Complex>(x.size()), x.origin);
  simd::cmul(x.view(), rot, y.samples);
  return y;
}

TimeSignal apply_phase_noise(const TimeSignal& x, double sigma, RngStream& stream) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("apply_phase_noise: sigma must be >= 0");
  if (sigma == 0.0) return x;
  std::vector<Complex> rot(x.size());
  double phi = 0.0;
  for (auto& r : rot) {
    phi += sigma * stream.gaussian();
    r = std::polar(1.0, phi);
  }
  TimeSignal y(std::vector<Complex>(x.size()), x.origin);
  simd::cmul(x.view(), rot, y.samples);
  return y;
}

double mean_power(const TimeSignal& x) {
  if (x.empty()) return 0.0;
  return simd::power_stats(x.view()).sum / static_cast<double>(x.size());
}

TimeSignal add_noise(const TimeSignal& x, double n0, RngStream& stream) {
  if (!(n0 >= 0.0)) throw std::invalid_argument("add_noise: n0 must be >= 0");
  std::vector<Complex> g(x.size());
  for (auto& v : g) {
    const auto [a, b] = stream.gaussian_pair();
    v = {a, b};
  }
  TimeSignal y = x;
  simd::axpy_real(std::sqrt(n0 / 2.0), g, y.samples);
  return y;
}

TimeSignal apply_awgn(const TimeSignal& x, double snr_db, RngStream& stream) {
  const double p = mean_power(x);
  if (!(p > 0.0)) throw std::invalid_argument("apply_awgn: input has zero power");
  return add_noise(x, p / std::pow(10.0, snr_db / 10.0), stream);
}

}  // namespace ofdm
