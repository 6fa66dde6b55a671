#include "ofdm/modem/subcarrier_plan.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ofdm {

SubcarrierPlan::SubcarrierPlan(std::size_t n_fft, bool null_dc, std::size_t guard_nulls_per_side)
    : n_fft_(n_fft), null_dc_(null_dc), guards_(guard_nulls_per_side) {
  if (n_fft == 0) throw std::invalid_argument("SubcarrierPlan: n_fft must be >= 1");
  const std::size_t first_negative = (n_fft + 1) / 2;
  const std::size_t positive_bins = first_negative - 1;
  const std::size_t negative_bins = n_fft - first_negative;
  if (guards_ > positive_bins || guards_ > negative_bins) {
    throw std::invalid_argument("SubcarrierPlan: guard_nulls_per_side=" + std::to_string(guards_) +
                                " exceeds the " + std::to_string(std::min(positive_bins, negative_bins)) +
                                " bins available per side for n_fft=" + std::to_string(n_fft));
  }
  mask_.assign(n_fft, 1);
  if (null_dc_) mask_[0] = 0;
  for (std::size_t g = 0; g < guards_; ++g) {
    mask_[first_negative - 1 - g] = 0;
    mask_[first_negative + g] = 0;
  }
  // Negative frequencies first (bins ceil(N/2) .. N-1), then DC, then positive.
  for (std::size_t k = first_negative; k < n_fft; ++k)
    if (mask_[k]) active_.push_back(k);
  for (std::size_t k = 0; k < first_negative; ++k)
    if (mask_[k]) active_.push_back(k);
  if (active_.empty()) throw std::invalid_argument("SubcarrierPlan: no active subcarriers");
}

std::vector<std::size_t> SubcarrierPlan::null_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < n_fft_; ++k)
    if (!mask_[k]) out.push_back(k);
  return out;
}

double SubcarrierPlan::bin_frequency(std::size_t bin) const {
  const double n = static_cast<double>(n_fft_);
  const double f = static_cast<double>(bin) / n;
  return bin < (n_fft_ + 1) / 2 ? f : f - 1.0;
}

Spectrum allocate(std::span<const Complex> symbols, const SubcarrierPlan& plan) {
  if (symbols.size() != plan.active_count()) {
    throw std::invalid_argument("allocate: got " + std::to_string(symbols.size()) +
                                " symbols for " + std::to_string(plan.active_count()) +
                                " active subcarriers");
  }
  Spectrum X(plan.n_fft());
  const auto active = plan.active_indices();
  for (std::size_t i = 0; i < active.size(); ++i) X[active[i]] = symbols[i];
  return X;
}

std::vector<Complex> deallocate(const Spectrum& X, const SubcarrierPlan& plan) {
  if (X.size() != plan.n_fft()) throw std::invalid_argument("deallocate: spectrum length != n_fft");
  const auto active = plan.active_indices();
  std::vector<Complex> out(active.size());
  for (std::size_t i = 0; i < active.size(); ++i) out[i] = X[active[i]];
  return out;
}

}  // namespace ofdm
