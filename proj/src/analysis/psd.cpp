#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "ofdm/analysis.hpp"
#include "ofdm/simd/kernels.hpp"
#include "ofdm/transform.hpp"

namespace ofdm {

std::string to_string(WindowKind w) {
  switch (w) {
    case WindowKind::kRectangular: return "rectangular";
    case WindowKind::kHann: return "hann";
    case WindowKind::kHamming: return "hamming";
  }
  return "?";
}

std::optional<WindowKind> parse_window(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (WindowKind w : {WindowKind::kRectangular, WindowKind::kHann, WindowKind::kHamming}) {
    if (lower == to_string(w)) return w;
  }
  return std::nullopt;
}

std::vector<double> make_window(WindowKind kind, std::size_t n) {
  std::vector<double> w(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double c = std::cos(2.0 * kPi * static_cast<double>(i) / static_cast<double>(n));
    switch (kind) {
      case WindowKind::kRectangular: break;
      case WindowKind::kHann: w[i] = 0.5 - 0.5 * c; break;
      case WindowKind::kHamming: w[i] = 0.54 - 0.46 * c; break;
    }
  }
  return w;
}

double PsdEstimate::at(double f) const {
  if (freq_bins.empty()) throw std::logic_error("PsdEstimate::at: empty estimate");
  std::size_t best = 0;
  for (std::size_t i = 1; i < freq_bins.size(); ++i)
    if (std::fabs(freq_bins[i] - f) < std::fabs(freq_bins[best] - f)) best = i;
  return power_db[best];
}

PsdEstimate estimate_psd(const TimeSignal& x, const PsdParams& params,
                         std::span<const double> in_band_freqs) {
  const std::size_t seg = params.segment_len;
  if (seg == 0) throw std::invalid_argument("estimate_psd: segment_len must be >= 1");
  if (params.overlap >= seg) throw std::invalid_argument("estimate_psd: overlap must be < segment_len");
  if (x.size() < seg) {
    throw std::invalid_argument("estimate_psd: signal has " + std::to_string(x.size()) +
                                " samples, fewer than one segment of " + std::to_string(seg));
  }
  const std::size_t hop = seg - params.overlap;
  const std::size_t segments = (x.size() - seg) / hop + 1;
  const std::vector<double> window = make_window(params.window, seg);
  const FftPlan fft(seg);

  std::vector<double> acc(seg, 0.0);
  std::vector<Complex> buf(seg);
  for (std::size_t s = 0; s < segments; ++s) {
    std::copy_n(x.samples.begin() + static_cast<std::ptrdiff_t>(s * hop), seg, buf.begin());
    simd::scale_real(window, buf);
    fft.forward(buf);
    for (std::size_t k = 0; k < seg; ++k) acc[k] += std::norm(buf[k]);
  }

  // Reorder to ascending frequency: bins ceil(seg/2) .. seg-1 are negative.
  PsdEstimate est;
  est.segment_len = seg;
  est.overlap = params.overlap;
  est.segments = segments;
  est.window = params.window;
  const std::size_t first_negative = (seg + 1) / 2;
  std::vector<double> linear;
  linear.reserve(seg);
  for (std::size_t i = 0; i < seg; ++i) {
    const std::size_t k = (i + first_negative) % seg;
    const double f = static_cast<double>(k) / static_cast<double>(seg);
    est.freq_bins.push_back(k < first_negative ? f : f - 1.0);
    linear.push_back(acc[k] / static_cast<double>(segments));
  }

  std::set<std::size_t> band;
  for (double f : in_band_freqs) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < seg; ++i)
      if (std::fabs(est.freq_bins[i] - f) < std::fabs(est.freq_bins[best] - f)) best = i;
    band.insert(best);
  }
  double ref = 0.0;
  if (band.empty()) {
    for (double p : linear) ref += p;
    ref /= static_cast<double>(seg);
  } else {
    for (std::size_t i : band) ref += linear[i];
    ref /= static_cast<double>(band.size());
  }
  if (!(ref > 0.0)) throw std::invalid_argument("estimate_psd: zero in-band power");
  est.power_db.reserve(seg);
  for (double p : linear) est.power_db.push_back(10.0 * std::log10(std::max(p / ref, 1e-300)));
  return est;
}

}  // namespace ofdm
