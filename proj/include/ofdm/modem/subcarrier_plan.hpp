#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ofdm/types.hpp"

namespace ofdm {

/// Active/null subcarrier layout.
///
/// Bin convention: bin 0 is DC, bins 1 .. ceil(N/2)-1 are positive
/// frequencies k/N, bins ceil(N/2) .. N-1 are negative frequencies k/N - 1
/// (for even N, bin N/2 is -1/2). The guard nulls on each side are the
/// guard_nulls_per_side bins nearest to +-Nyquist, i.e. the highest positive
/// bins and the lowest-numbered negative bins.
///
/// Example, N = 8, null_dc, one guard per side: nulls {0, 3, 4}, active
/// bins {1, 2, 5, 6, 7}, listed in ascending frequency as 5, 6, 7, 1, 2.
class SubcarrierPlan {
 public:
  /// Throws std::invalid_argument when no subcarrier would stay active or
  /// the guards overrun a side of the spectrum.
  SubcarrierPlan(std::size_t n_fft, bool null_dc, std::size_t guard_nulls_per_side);

  static SubcarrierPlan all_active(std::size_t n_fft) { return {n_fft, false, 0}; }

  std::size_t n_fft() const { return n_fft_; }
  bool null_dc() const { return null_dc_; }
  std::size_t guard_nulls_per_side() const { return guards_; }

  /// Active bins in ascending-frequency order; symbols are assigned in this order.
  std::span<const std::size_t> active_indices() const { return active_; }
  std::vector<std::size_t> null_indices() const;
  std::size_t active_count() const { return active_.size(); }
  bool is_active(std::size_t bin) const { return mask_.at(bin) != 0; }

  /// Normalized frequency (cycles/sample) of a bin under the convention above.
  double bin_frequency(std::size_t bin) const;

 private:
  std::size_t n_fft_;
  bool null_dc_;
  std::size_t guards_;
  std::vector<std::size_t> active_;
  std::vector<std::uint8_t> mask_;
};

/// Places symbols on the active bins; null bins are exactly zero.
Spectrum allocate(std::span<const Complex> symbols, const SubcarrierPlan& plan);
/// Reads the active bins back out; null-bin contents are ignored.
std::vector<Complex> deallocate(const Spectrum& X, const SubcarrierPlan& plan);

}  // namespace ofdm
