#include "ofdm/harness/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "ofdm/harness/experiments.hpp"

namespace ofdm::harness {
namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kRuntime = 2;

struct Command {
  const char* name;
  Experiment experiment;
  const char* help;
};

constexpr Command kCommands[] = {
    {"psd", Experiment::kPsd, "power spectral density of the transmit stream"},
    {"papr", Experiment::kPaprCcdf, "PAPR and sample-power CCDF per modulation"},
    {"ber", Experiment::kBerSweep, "bit error rate over AWGN versus Eb/N0"},
    {"cfo", Experiment::kCfoSweep, "ICI from carrier frequency offset: predicted vs measured SINR"},
    {"cp", Experiment::kCpSweep, "cyclic prefix length versus multipath delay spread"},
};

unsigned default_threads() {
  if (const char* env = std::getenv("OFDMKIT_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out.flush()) throw std::runtime_error("write failed: " + path);
}

// The experiment named by a config document, if it can be read at all.
std::optional<Experiment> peek_experiment(const std::string& text) {
  const auto doc = nlohmann::json::parse(text, nullptr, false);
  if (!doc.is_object()) return std::nullopt;
  const auto& body = doc.contains("resolved_config") ? doc["resolved_config"] : doc;
  if (!body.is_object() || !body.contains("experiment") || !body["experiment"].is_string()) return std::nullopt;
  return parse_experiment(body["experiment"].get<std::string>());
}

std::string names_of(Experiment e) {
  std::string s;
  for (const std::string& n : preset_names(e)) s += (s.empty() ? "" : ", ") + n;
  return s;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"OFDM baseband simulation experiments", "ofdmsim"};
  app.require_subcommand(1);
  app.set_version_flag("--version", library_version());

  std::string config_path, preset_name, out_path;
  std::optional<std::uint64_t> seed;
  unsigned threads = default_threads();

  std::vector<std::pair<CLI::App*, Experiment>> runs;
  for (const Command& c : kCommands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    auto* cfg_opt = sub->add_option("--config", config_path, "JSON scenario file");
    auto* pre_opt = sub->add_option("--preset", preset_name, "named preset: " + names_of(c.experiment));
    cfg_opt->excludes(pre_opt);
    sub->add_option("--seed", seed, "override the config seed");
    sub->add_option("--out", out_path, "CSV output path; a .json report is written next to it");
    sub->add_option("--threads", threads, "worker threads (default: OFDMKIT_THREADS or all cores)")
        ->check(CLI::PositiveNumber);
    runs.emplace_back(sub, c.experiment);
  }

  std::string list_experiment, list_name;
  CLI::App* presets = app.add_subcommand("presets", "list presets, or print one as a config file");
  presets->add_option("experiment", list_experiment, "psd, papr_ccdf, ber_sweep, cfo_sweep or cp_sweep");
  presets->add_option("name", list_name, "preset name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  if (presets->parsed()) {
    if (list_experiment.empty()) {
      for (const Command& c : kCommands) {
        out << to_string(c.experiment) << ": " << names_of(c.experiment) << "\n";
      }
      return kOk;
    }
    const auto e = parse_experiment(list_experiment);
    if (!e) {
      err << "ofdmsim: unknown experiment '" << list_experiment << "'\n";
      return kUsage;
    }
    if (list_name.empty()) {
      out << names_of(*e) << "\n";
      return kOk;
    }
    const auto cfg = preset(*e, list_name);
    if (!cfg) {
      err << "ofdmsim: no preset '" << list_name << "' for " << list_experiment << "\n";
      return kUsage;
    }
    out << to_json(*cfg) << "\n";
    return kOk;
  }

  Experiment experiment{};
  for (const auto& [sub, e] : runs) {
    if (sub->parsed()) experiment = e;
  }

  ScenarioConfig cfg;
  try {
    if (!preset_name.empty()) {
      const auto p = preset(experiment, preset_name);
      if (!p) {
        err << "ofdmsim: no preset '" << preset_name << "' for " << to_string(experiment)
            << " (available: " << names_of(experiment) << ")\n";
        return kUsage;
      }
      cfg = *p;
    } else if (!config_path.empty()) {
      std::string text;
      try {
        text = read_file(config_path);
      } catch (const std::exception& e) {
        err << "ofdmsim: " << e.what() << "\n";
        return kUsage;
      }
      if (const auto named = peek_experiment(text); named && *named != experiment) {
        throw ConfigError("experiment", 0,
                          config_path + ": experiment: config is '" + std::string(to_string(*named)) +
                              "' but the subcommand runs '" + std::string(to_string(experiment)) + "'");
      }
      cfg = parse_config(text, config_path);
    } else {
      err << "ofdmsim: one of --config or --preset is required\n" << app.help();
      return kUsage;
    }
    if (seed) cfg.seed = *seed;
    if (!out_path.empty()) cfg.output = out_path;
    validate(cfg);
  } catch (const ConfigError& e) {
    err << "ofdmsim: " << e.what() << "\n";
    return kUsage;
  }

  try {
    const RunReport report = run_experiment(cfg, threads);
    const std::string csv = report.table.to_string();
    if (cfg.output.empty()) {
      out << csv;
    } else {
      write_file(cfg.output, csv);
      write_file(cfg.output + ".json", report_json(report, cfg.output));
    }
  } catch (const ConfigError& e) {
    err << "ofdmsim: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "ofdmsim: " << e.what() << "\n";
    return kRuntime;
  }
  return kOk;
}

}  // namespace ofdm::harness
