#include "ofdm/transform.hpp"

#include <cmath>
#include <stdexcept>

namespace ofdm {
namespace {

// Twiddle table indexed by (k*n) mod N keeps the phase argument exact for
// large N instead of accumulating 2*pi*k*n/N in floating point.
std::vector<Complex> make_twiddles(std::size_t n) {
  std::vector<Complex> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double phase = -2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
    w[i] = {std::cos(phase), std::sin(phase)};
  }
  return w;
}

std::vector<Complex> direct(std::span<const Complex> in, const std::vector<Complex>& w,
                            bool inverse) {
  const std::size_t n = in.size();
  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex acc{0.0, 0.0};
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex tw = inverse ? std::conj(w[idx]) : w[idx];
      acc += in[i] * tw;
      idx += k;
      if (idx >= n) idx -= n;
    }
    out[k] = inverse ? acc : acc / static_cast<double>(n);
  }
  return out;
}

}  // namespace

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

Spectrum dft(const TimeSignal& f) {
  if (f.empty()) throw std::invalid_argument("dft: empty input");
  return Spectrum(direct(f.view(), make_twiddles(f.size()), false));
}

TimeSignal idft(const Spectrum& F) {
  if (F.size() == 0) throw std::invalid_argument("idft: empty input");
  return TimeSignal(direct(F.view(), make_twiddles(F.size()), true));
}

FftPlan::FftPlan(std::size_t n) : n_(n), radix2_(is_power_of_two(n)) {
  if (n == 0) throw std::invalid_argument("FftPlan: size must be >= 1");
  twiddles_ = make_twiddles(n);
  if (radix2_) {
    bitrev_.resize(n);
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) < n) ++bits;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t r = 0;
      for (std::size_t b = 0; b < bits; ++b) r |= ((i >> b) & 1u) << (bits - 1 - b);
      bitrev_[i] = r;
    }
  }
}

void FftPlan::transform(std::vector<Complex>& data, bool inverse) const {
  if (data.size() != n_) throw std::invalid_argument("FftPlan: buffer length mismatch");
  if (!radix2_) {
    data = direct(data, twiddles_, inverse);
    return;
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (i < bitrev_[i]) std::swap(data[i], data[bitrev_[i]]);
  }
  // Iterative decimation-in-time butterflies.
  for (std::size_t len = 2; len <= n_; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n_ / len;
    for (std::size_t start = 0; start < n_; start += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const Complex tw = inverse ? std::conj(twiddles_[j * stride]) : twiddles_[j * stride];
        const Complex u = data[start + j];
        const Complex v = data[start + j + half] * tw;
        data[start + j] = u + v;
        data[start + j + half] = u - v;
      }
    }
  }
  if (!inverse) {
    const double scale = 1.0 / static_cast<double>(n_);
    for (auto& v : data) v *= scale;
  }
}

void FftPlan::forward(std::vector<Complex>& data) const { transform(data, false); }
void FftPlan::inverse(std::vector<Complex>& data) const { transform(data, true); }

Spectrum FftPlan::forward(const TimeSignal& f) const {
  std::vector<Complex> buf = f.samples;
  transform(buf, false);
  return Spectrum(std::move(buf));
}

TimeSignal FftPlan::inverse(const Spectrum& F) const {
  std::vector<Complex> buf = F.bins;
  transform(buf, true);
  return TimeSignal(std::move(buf));
}

Spectrum fft(const TimeSignal& f) {
  if (f.empty()) throw std::invalid_argument("fft: empty input");
  if (!is_power_of_two(f.size())) return dft(f);
  return FftPlan(f.size()).forward(f);
}

TimeSignal ifft(const Spectrum& F) {
  if (F.size() == 0) throw std::invalid_argument("ifft: empty input");
  if (!is_power_of_two(F.size())) return idft(F);
  return FftPlan(F.size()).inverse(F);
}

}  // namespace ofdm
