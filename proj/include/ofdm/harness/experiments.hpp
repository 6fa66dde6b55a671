#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ofdm/harness/config.hpp"
#include "ofdm/harness/csv.hpp"

namespace ofdm::harness {

/// Result of one experiment run. Only `table` is required to be
/// byte-identical across runs; wall time and kernel name are metadata.
struct RunReport {
  ScenarioConfig config;
  CsvTable table;
  std::vector<std::pair<std::string, std::string>> header;  // documented notes
  double wall_seconds = 0.0;
  std::string library_version;
  std::string simd_kernels;
};

// All runners validate first and throw ConfigError before computing.
// `threads` never changes the table: trial t of sweep point p draws from
// stream ids derived from p * n_trials + t and results are reduced in trial order.
RunReport run_psd(const ScenarioConfig& cfg, unsigned threads = 1);
RunReport run_papr_ccdf(const ScenarioConfig& cfg, unsigned threads = 1);
RunReport run_ber_sweep(const ScenarioConfig& cfg, unsigned threads = 1);
RunReport run_cfo_sweep(const ScenarioConfig& cfg, unsigned threads = 1);
RunReport run_cp_sweep(const ScenarioConfig& cfg, unsigned threads = 1);
RunReport run_experiment(const ScenarioConfig& cfg, unsigned threads = 1);

/// SNR per sample (dB, referenced to measured transmit power) for an Eb/N0:
///   SNR = Eb/N0 + 10 log10(R bps Na / (N + Ng))
/// with R the coding rate, bps bits per symbol, Na active subcarriers.
double ebn0_to_snr_db(double ebn0_db, const ScenarioConfig& cfg);

std::string library_version();

/// Sidecar JSON: resolved config, header notes, seed, wall time, version.
std::string report_json(const RunReport& report, const std::string& csv_path);

}  // namespace ofdm::harness
