#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ofdm/analysis.hpp"
#include "ofdm/channel.hpp"
#include "ofdm/modem/constellation.hpp"
#include "ofdm/modem/subcarrier_plan.hpp"

namespace ofdm::harness {

inline constexpr int kConfigSchemaVersion = 1;

enum class Experiment { kPsd, kPaprCcdf, kBerSweep, kCfoSweep, kCpSweep };

std::string_view to_string(Experiment e);
std::optional<Experiment> parse_experiment(std::string_view name);

struct FilterSpec {
  std::size_t num_taps = 127;
  double cutoff = 0.345;
};

/// Fully resolved experiment definition. Every field has a value after
/// parsing; defaults are filled in so the echo in a report replays exactly.
struct ScenarioConfig {
  Experiment experiment = Experiment::kBerSweep;
  std::size_t n_fft = 64;
  bool null_dc = false;
  std::size_t guard_nulls_per_side = 0;
  std::vector<Scheme> schemes{Scheme::kQpsk};
  std::size_t cp_len = 0;
  std::size_t rolloff_len = 0;
  std::optional<FilterSpec> tx_filter;

  double epsilon = 0.0;
  double phase_noise_sigma = 0.0;
  std::optional<double> snr_db;
  std::optional<std::vector<Complex>> taps;

  std::string sweep_variable;  // "", "ebn0_db", "epsilon" or "cp_len"
  std::vector<double> sweep_values;

  std::size_t n_trials = 1;
  std::size_t symbols_per_trial = 1;
  std::vector<double> thresholds_db;   // papr_ccdf; stored ascending
  std::optional<double> clip_ratio_db; // papr_ccdf
  PsdParams psd = PsdParams::defaults_for(64);

  std::uint64_t seed = 1;
  std::string output;

  SubcarrierPlan plan() const { return {n_fft, null_dc, guard_nulls_per_side}; }
  ImpairmentConfig impairments() const;
};

/// Validation or parse failure, tied to the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, int line, const std::string& message);
  const std::string& key() const { return key_; }
  int line() const { return line_; }

 private:
  std::string key_;
  int line_;
};

/// Parses a JSON config document. `source_name` prefixes error messages.
/// A report sidecar (with a top-level "resolved_config") is accepted and
/// its embedded config is used. Throws ConfigError.
ScenarioConfig parse_config(std::string_view json_text, std::string_view source_name = "config");

/// Checks every invariant of every referenced type; throws ConfigError.
/// `text` (optional) is the raw document, used to report line numbers.
void validate(const ScenarioConfig& cfg, std::string_view text = {}, std::string_view source_name = "config");

/// Canonical JSON of a resolved config (parse_config(to_json(c)) == c).
std::string to_json(const ScenarioConfig& cfg, int indent = 2);

/// Named presets per experiment: psd {fig1, fig2}, papr_ccdf {fig5},
/// ber_sweep {awgn}, cfo_sweep {sweep}, cp_sweep {sweep}.
std::optional<ScenarioConfig> preset(Experiment e, std::string_view name);
std::vector<std::string> preset_names(Experiment e);

}  // namespace ofdm::harness
