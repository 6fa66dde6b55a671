#include <cmath>
#include <limits>
#include <stdexcept>

#include "ofdm/analysis.hpp"

namespace ofdm {

Complex ici_coefficient(double d, std::size_t n_fft) {
  if (n_fft == 0) throw std::invalid_argument("ici_coefficient: N must be >= 1");
  const double n = static_cast<double>(n_fft);
  const double nearest = std::round(d);
  if (d == nearest) return std::fmod(nearest, n) == 0.0 ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
  // sin(pi d) evaluated on the fractional part keeps the argument small.
  const double frac = d - nearest;
  const double sign = std::fmod(std::fabs(nearest), 2.0) == 0.0 ? 1.0 : -1.0;
  const double num = sign * std::sin(kPi * frac);
  const double den = std::sin(kPi * d / n);
  const double magnitude = num / (n * den);
  return std::polar(1.0, kPi * d * (n - 1.0) / n) * magnitude;
}

Complex ici_coefficient_direct(double d, std::size_t n_fft) {
  if (n_fft == 0) throw std::invalid_argument("ici_coefficient_direct: N must be >= 1");
  const double n = static_cast<double>(n_fft);
  Complex acc{};
  for (std::size_t i = 0; i < n_fft; ++i) {
    acc += std::polar(1.0, 2.0 * kPi * static_cast<double>(i) * d / n);
  }
  return acc / n;
}

Spectrum predict_cfo_output(const Spectrum& X, double epsilon) {
  const std::size_t n = X.size();
  if (n == 0) throw std::invalid_argument("predict_cfo_output: empty spectrum");
  if (epsilon == 0.0) return X;
  // S is N-periodic in d, so one period of coefficients covers every (m - k).
  std::vector<Complex> s(n);
  for (std::size_t r = 0; r < n; ++r) s[r] = ici_coefficient(static_cast<double>(r) + epsilon, n);
  Spectrum Y(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex acc{};
    for (std::size_t m = 0; m < n; ++m) acc += X[m] * s[(m + n - k) % n];
    Y[k] = acc;
  }
  return Y;
}

double cfo_sinr(double epsilon, const SubcarrierPlan& plan) {
  if (!(std::fabs(epsilon) < 0.5)) {
    throw std::invalid_argument("cfo_sinr: |epsilon| must be < 0.5 (bin assignment is ambiguous)");
  }
  const std::size_t n = plan.n_fft();
  const auto active = plan.active_indices();
  const std::size_t k = active[active.size() / 2];
  const double signal = std::norm(ici_coefficient(epsilon, n));
  double interference = 0.0;
  for (std::size_t m : active) {
    if (m == k) continue;
    const double d = static_cast<double>(m) - static_cast<double>(k) + epsilon;
    interference += std::norm(ici_coefficient(d, n));
  }
  if (interference == 0.0) return std::numeric_limits<double>::infinity();
  return signal / interference;
}

double cfo_sinr(double epsilon, std::size_t n_fft) {
  return cfo_sinr(epsilon, SubcarrierPlan::all_active(n_fft));
}

}  // namespace ofdm
