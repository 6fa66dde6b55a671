#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ofdm/modem/constellation.hpp"
#include "ofdm/modem/subcarrier_plan.hpp"
#include "ofdm/types.hpp"

namespace ofdm {

// ---------------------------------------------------------------------------
// Inter-carrier interference under carrier frequency offset.
//
// With y(n) = x(n) e^{j 2 pi eps n / N} and the scaled forward transform,
//
//   Y(k) = sum_m X(m) S(m - k + eps),   S(d) = (1/N) sum_n e^{j 2 pi n d / N}
//
// The exponent carries the time index n; S is the inner sum over n.
// ---------------------------------------------------------------------------

/// Closed geometric-sum form
///   S(d) = (1/N) e^{j pi d (N-1)/N} sin(pi d) / sin(pi d / N),
/// with the exact limits S = 1 for d = 0 mod N and S = 0 for other integers.
Complex ici_coefficient(double d, std::size_t n_fft);
/// The N-term sum, kept as an independent route to the closed form.
Complex ici_coefficient_direct(double d, std::size_t n_fft);

class IciKernel {
 public:
  explicit IciKernel(std::size_t n_fft) : n_fft_(n_fft) {}
  std::size_t n_fft() const { return n_fft_; }
  Complex operator()(double d) const { return ici_coefficient(d, n_fft_); }

 private:
  std::size_t n_fft_;
};

/// Closed-form receive spectrum under CFO eps (single symbol, origin 0).
Spectrum predict_cfo_output(const Spectrum& X, double epsilon);

/// Noise-free SINR of the middle active subcarrier for unit-power symbols:
/// |S(eps)|^2 / sum_{m active, m != k} |S(m - k + eps)|^2. Over one full period
/// the kernel energy sum_d |S(d + eps)|^2 is exactly 1.
/// Returns +infinity at eps = 0. Throws std::invalid_argument for |eps| >= 0.5.
double cfo_sinr(double epsilon, const SubcarrierPlan& plan);
double cfo_sinr(double epsilon, std::size_t n_fft);

// ---------------------------------------------------------------------------
// PAPR
// ---------------------------------------------------------------------------

struct PaprResult {
  double papr_linear = 1.0;
  double papr_db = 0.0;
  double peak_power = 0.0;
  double mean_power = 0.0;
};

/// max |x(n)|^2 / mean |x(n)|^2 over the given (useful, CP-free) samples.
/// Throws std::invalid_argument for an empty or zero-power input.
PaprResult papr(const TimeSignal& x);

/// Scales samples above A = sqrt(mean_power * 10^(clip_ratio_db / 10)) down
/// to magnitude A, keeping their phase. mean_power is measured on x.
TimeSignal clip(const TimeSignal& x, double clip_ratio_db);

struct CcdfCurve {
  std::string label;                // e.g. "symbol_papr" or "sample_power"
  std::vector<double> thresholds_db;  // ascending
  std::vector<double> exceed_prob;    // P(value > threshold), non-increasing
  std::uint64_t trials = 0;
};

/// Empirical CCDF of `values_db`; thresholds are sorted ascending first.
CcdfCurve empirical_ccdf(std::span<const double> values_db, std::vector<double> thresholds_db,
                         std::string label);

/// Threshold x such that a fraction `prob` of the values exceed it: the
/// (1 - prob) order statistic. Throws for empty input or prob outside (0, 1).
double ccdf_crossing(std::span<const double> values_db, double prob);

struct PaprCcdfRun {
  Scheme scheme = Scheme::kQpsk;
  SubcarrierPlan plan = SubcarrierPlan::all_active(128);
  std::size_t n_symbols = 1;
  std::uint64_t seed = 0;
  std::optional<double> clip_ratio_db;  // clip each symbol before measuring
  std::uint64_t first_trial = 0;         // symbol i uses trial index first_trial + i
  unsigned threads = 1;
};

/// Per-symbol PAPR CCDF plus the per-sample |x(n)|^2 / mean CCDF (both with
/// thresholds in dB). Symbol i draws its bits from the data stream of
/// trial first_trial + i.
struct PaprCcdf {
  CcdfCurve symbol_papr;
  CcdfCurve sample_power;
  std::vector<double> papr_db;  // one entry per symbol, in symbol order
};

PaprCcdf papr_ccdf(const PaprCcdfRun& run, std::vector<double> thresholds_db);

/// Real and imaginary parts of the time samples of random symbols, for
/// distribution checks: `n_symbols` symbols, stream_id = symbol index.
struct SampleMoments {
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  std::uint64_t count = 0;
};
SampleMoments moments(std::span<const double> values);

struct TimeSampleMoments {
  SampleMoments real;
  SampleMoments imag;
};
TimeSampleMoments time_sample_moments(Scheme scheme, const SubcarrierPlan& plan,
                                      std::size_t n_symbols, std::uint64_t seed,
                                      unsigned threads = 1);

// ---------------------------------------------------------------------------
// Power spectral density (Welch averaged periodogram)
// ---------------------------------------------------------------------------

enum class WindowKind { kRectangular, kHann, kHamming };
std::string to_string(WindowKind w);
std::optional<WindowKind> parse_window(std::string_view name);
/// Periodic (DFT-even) window of length n.
std::vector<double> make_window(WindowKind kind, std::size_t n);

struct PsdParams {
  std::size_t segment_len = 256;
  std::size_t overlap = 128;
  WindowKind window = WindowKind::kHann;

  /// Defaults for an N-point system: segment 4N, 50% overlap, Hann.
  static PsdParams defaults_for(std::size_t n_fft) { return {4 * n_fft, 2 * n_fft, WindowKind::kHann}; }
};

struct PsdEstimate {
  std::vector<double> freq_bins;  // cycles/sample, ascending in [-0.5, 0.5)
  std::vector<double> power_db;   // relative to the in-band mean
  std::size_t segment_len = 0;
  std::size_t overlap = 0;
  std::size_t segments = 0;
  WindowKind window = WindowKind::kHann;

  /// Power at the grid point nearest to f.
  double at(double f) const;
  /// Max over grid points whose frequency satisfies pred.
  template <typename Pred>
  double max_where(Pred pred) const {
    double best = -1e300;
    for (std::size_t i = 0; i < freq_bins.size(); ++i)
      if (pred(freq_bins[i]) && power_db[i] > best) best = power_db[i];
    return best;
  }
};

/// in_band_freqs selects the grid points (nearest to each listed frequency)
/// whose mean power is the 0 dB reference; empty means all grid points.
/// Throws std::invalid_argument when x is shorter than one segment or the
/// parameters are inconsistent.
PsdEstimate estimate_psd(const TimeSignal& x, const PsdParams& params,
                         std::span<const double> in_band_freqs = {});

// ---------------------------------------------------------------------------
// Error metrics
// ---------------------------------------------------------------------------

/// Fraction of differing bits. Throws on length mismatch or empty input.
double ber(std::span<const std::uint8_t> tx_bits, std::span<const std::uint8_t> rx_bits);
std::uint64_t bit_errors(std::span<const std::uint8_t> tx_bits, std::span<const std::uint8_t> rx_bits);
/// sqrt(mean |rx - ref|^2 / mean |ref|^2).
double evm(std::span<const Complex> rx_symbols, std::span<const Complex> ref_symbols);

/// Gaussian tail Q(x) = 0.5 erfc(x / sqrt 2).
double q_function(double x);

}  // namespace ofdm
