#include "ofdm/harness/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "json.hpp"
#include "ofdm/modem/ofdm_symbol.hpp"
#include "ofdm/modem/tx_filter.hpp"

namespace ofdm::harness {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

constexpr std::size_t kMaxFft = std::size_t{1} << 16;
constexpr std::size_t kMaxSegment = std::size_t{1} << 20;

// 1-based line of the first `"name"` token at or after the first occurrence
// of each earlier path component; 0 when not found.
int locate(std::string_view text, std::string_view dotted_key) {
  std::size_t pos = 0;
  bool found_any = false;
  std::size_t start = 0;
  for (;;) {
    const std::size_t dot = dotted_key.find('.', start);
    const std::string part(dotted_key.substr(start, dot == std::string_view::npos ? dotted_key.npos : dot - start));
    const std::size_t found = text.find("\"" + part + "\"", pos);
    if (found == std::string_view::npos) break;
    pos = found;
    found_any = true;
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  if (!found_any) return 0;
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
}

struct Reader {
  std::string_view text;
  std::string_view source;

  [[noreturn]] void fail(const std::string& key, const std::string& message) const {
    const int line = locate(text, key);
    std::string where(source);
    if (line > 0) where += ":" + std::to_string(line);
    throw ConfigError(key, line, where + ": " + key + ": " + message);
  }

  void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& prefix) const {
    if (!obj.is_object()) fail(prefix.empty() ? "(root)" : prefix, "expected a JSON object");
    for (const auto& [k, v] : obj.items()) {
      if (!allowed.count(k)) fail(prefix.empty() ? k : prefix + "." + k, "unknown key");
    }
  }

  std::size_t get_size(const json& v, const std::string& key) const {
    if (v.is_number_unsigned()) return v.get<std::size_t>();
    if (v.is_number_integer()) {
      if (v.get<std::int64_t>() < 0) fail(key, "must be >= 0");
      return static_cast<std::size_t>(v.get<std::int64_t>());
    }
    if (v.is_number_float()) {
      const double d = v.get<double>();
      if (d >= 0 && d == std::floor(d) && d < 9.0e15) return static_cast<std::size_t>(d);
    }
    fail(key, "expected a non-negative integer");
  }

  std::uint64_t get_u64(const json& v, const std::string& key) const {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::uint64_t>();
    fail(key, "expected an unsigned 64-bit integer");
  }

  double get_double(const json& v, const std::string& key) const {
    if (!v.is_number()) fail(key, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(key, "must be finite");
    return d;
  }

  bool get_bool(const json& v, const std::string& key) const {
    if (!v.is_boolean()) fail(key, "expected true or false");
    return v.get<bool>();
  }

  std::string get_string(const json& v, const std::string& key) const {
    if (!v.is_string()) fail(key, "expected a string");
    return v.get<std::string>();
  }

  std::vector<double> get_doubles(const json& v, const std::string& key) const {
    if (!v.is_array()) fail(key, "expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) out.push_back(get_double(e, key));
    return out;
  }

  Scheme get_scheme(const json& v, const std::string& key) const {
    const auto s = parse_scheme(get_string(v, key));
    if (!s) fail(key, "unknown scheme '" + v.get<std::string>() + "' (BPSK, QPSK, 16QAM, 64QAM)");
    return *s;
  }

  std::vector<Complex> get_taps(const json& v, const std::string& key) const {
    if (!v.is_array()) fail(key, "expected an array of taps ([re, im] pairs or real numbers)");
    std::vector<Complex> taps;
    for (const auto& t : v) {
      if (t.is_number()) {
        taps.emplace_back(get_double(t, key), 0.0);
      } else if (t.is_array() && t.size() == 2) {
        taps.emplace_back(get_double(t[0], key), get_double(t[1], key));
      } else {
        fail(key, "each tap must be a number or an [re, im] pair");
      }
    }
    return taps;
  }
};

std::vector<double> default_thresholds() {
  std::vector<double> t;
  for (int i = 0; i <= 52; ++i) t.push_back(0.25 * i);
  return t;
}

}  // namespace

std::string_view to_string(Experiment e) {
  switch (e) {
    case Experiment::kPsd: return "psd";
    case Experiment::kPaprCcdf: return "papr_ccdf";
    case Experiment::kBerSweep: return "ber_sweep";
    case Experiment::kCfoSweep: return "cfo_sweep";
    case Experiment::kCpSweep: return "cp_sweep";
  }
  return "?";
}

std::optional<Experiment> parse_experiment(std::string_view name) {
  for (Experiment e : {Experiment::kPsd, Experiment::kPaprCcdf, Experiment::kBerSweep,
                       Experiment::kCfoSweep, Experiment::kCpSweep}) {
    if (name == to_string(e)) return e;
  }
  return std::nullopt;
}

ConfigError::ConfigError(std::string key, int line, const std::string& message)
    : std::runtime_error(message), key_(std::move(key)), line_(line) {}

ImpairmentConfig ScenarioConfig::impairments() const {
  ImpairmentConfig imp;
  imp.epsilon = epsilon;
  imp.phase_noise_sigma = phase_noise_sigma;
  imp.snr_db = snr_db;
  if (taps) imp.profile = ChannelProfile(*taps);
  return imp;
}

ScenarioConfig parse_config(std::string_view json_text, std::string_view source_name) {
  Reader r{json_text, source_name};
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, json_text.size());
    const int line = 1 + static_cast<int>(std::count(json_text.begin(), json_text.begin() + static_cast<std::ptrdiff_t>(upto), '\n'));
    throw ConfigError("(document)", line,
                      std::string(source_name) + ":" + std::to_string(line) + ": invalid JSON: " + e.what());
  }
  if (doc.is_object() && doc.contains("resolved_config")) doc = doc["resolved_config"];

  r.check_keys(doc,
               {"schema_version", "experiment", "n_fft", "null_dc", "guard_nulls_per_side", "scheme",
                "cp_len", "rolloff_len", "tx_filter", "impairments", "sweep", "n_trials",
                "symbols_per_trial", "thresholds_db", "clip_ratio_db", "psd", "seed", "output"},
               "");

  ScenarioConfig cfg;
  if (doc.contains("schema_version")) {
    const auto v = r.get_size(doc["schema_version"], "schema_version");
    if (v != static_cast<std::size_t>(kConfigSchemaVersion))
      r.fail("schema_version", "unsupported version " + std::to_string(v));
  }
  if (!doc.contains("experiment")) r.fail("experiment", "required key is missing");
  {
    const std::string name = r.get_string(doc["experiment"], "experiment");
    const auto e = parse_experiment(name);
    if (!e) r.fail("experiment", "unknown experiment '" + name + "' (psd, papr_ccdf, ber_sweep, cfo_sweep, cp_sweep)");
    cfg.experiment = *e;
  }
  if (doc.contains("n_fft")) cfg.n_fft = r.get_size(doc["n_fft"], "n_fft");
  if (doc.contains("null_dc")) cfg.null_dc = r.get_bool(doc["null_dc"], "null_dc");
  if (doc.contains("guard_nulls_per_side"))
    cfg.guard_nulls_per_side = r.get_size(doc["guard_nulls_per_side"], "guard_nulls_per_side");
  if (doc.contains("scheme")) {
    const json& s = doc["scheme"];
    cfg.schemes.clear();
    if (s.is_array()) {
      for (const auto& e : s) cfg.schemes.push_back(r.get_scheme(e, "scheme"));
    } else {
      cfg.schemes.push_back(r.get_scheme(s, "scheme"));
    }
  }
  if (doc.contains("cp_len")) cfg.cp_len = r.get_size(doc["cp_len"], "cp_len");
  if (doc.contains("rolloff_len")) cfg.rolloff_len = r.get_size(doc["rolloff_len"], "rolloff_len");
  if (doc.contains("tx_filter") && !doc["tx_filter"].is_null()) {
    const json& f = doc["tx_filter"];
    r.check_keys(f, {"num_taps", "cutoff"}, "tx_filter");
    FilterSpec spec;
    if (f.contains("num_taps")) spec.num_taps = r.get_size(f["num_taps"], "tx_filter.num_taps");
    if (f.contains("cutoff")) spec.cutoff = r.get_double(f["cutoff"], "tx_filter.cutoff");
    cfg.tx_filter = spec;
  }
  if (doc.contains("impairments")) {
    const json& imp = doc["impairments"];
    r.check_keys(imp, {"epsilon", "phase_noise_sigma", "snr_db", "taps"}, "impairments");
    if (imp.contains("epsilon")) cfg.epsilon = r.get_double(imp["epsilon"], "impairments.epsilon");
    if (imp.contains("phase_noise_sigma"))
      cfg.phase_noise_sigma = r.get_double(imp["phase_noise_sigma"], "impairments.phase_noise_sigma");
    if (imp.contains("snr_db") && !imp["snr_db"].is_null()) {
      if (imp["snr_db"].is_string() && imp["snr_db"].get<std::string>() == "off") {
        cfg.snr_db.reset();
      } else {
        cfg.snr_db = r.get_double(imp["snr_db"], "impairments.snr_db");
      }
    }
    if (imp.contains("taps") && !imp["taps"].is_null() &&
        !(imp["taps"].is_string() && imp["taps"].get<std::string>() == "identity")) {
      cfg.taps = r.get_taps(imp["taps"], "impairments.taps");
    }
  }
  if (doc.contains("sweep") && !doc["sweep"].is_null()) {
    const json& s = doc["sweep"];
    r.check_keys(s, {"variable", "values"}, "sweep");
    if (!s.contains("variable")) r.fail("sweep.variable", "required key is missing");
    if (!s.contains("values")) r.fail("sweep.values", "required key is missing");
    cfg.sweep_variable = r.get_string(s["variable"], "sweep.variable");
    cfg.sweep_values = r.get_doubles(s["values"], "sweep.values");
  }
  if (doc.contains("n_trials")) cfg.n_trials = r.get_size(doc["n_trials"], "n_trials");
  if (doc.contains("symbols_per_trial"))
    cfg.symbols_per_trial = r.get_size(doc["symbols_per_trial"], "symbols_per_trial");
  cfg.thresholds_db = doc.contains("thresholds_db") ? r.get_doubles(doc["thresholds_db"], "thresholds_db")
                                                     : default_thresholds();
  std::sort(cfg.thresholds_db.begin(), cfg.thresholds_db.end());
  if (doc.contains("clip_ratio_db") && !doc["clip_ratio_db"].is_null())
    cfg.clip_ratio_db = r.get_double(doc["clip_ratio_db"], "clip_ratio_db");
  cfg.psd = PsdParams::defaults_for(cfg.n_fft);
  if (doc.contains("psd") && !doc["psd"].is_null()) {
    const json& p = doc["psd"];
    r.check_keys(p, {"segment_len", "overlap", "window"}, "psd");
    if (p.contains("segment_len")) {
      cfg.psd.segment_len = r.get_size(p["segment_len"], "psd.segment_len");
      cfg.psd.overlap = cfg.psd.segment_len / 2;
    }
    if (p.contains("overlap")) cfg.psd.overlap = r.get_size(p["overlap"], "psd.overlap");
    if (p.contains("window")) {
      const std::string w = r.get_string(p["window"], "psd.window");
      const auto kind = parse_window(w);
      if (!kind) r.fail("psd.window", "unknown window '" + w + "' (rectangular, hann, hamming)");
      cfg.psd.window = *kind;
    }
  }
  if (doc.contains("seed")) cfg.seed = r.get_u64(doc["seed"], "seed");
  if (doc.contains("output") && !doc["output"].is_null()) cfg.output = r.get_string(doc["output"], "output");

  validate(cfg, json_text, source_name);
  return cfg;
}

void validate(const ScenarioConfig& cfg, std::string_view text, std::string_view source_name) {
  Reader r{text, source_name};
  if (cfg.n_fft == 0 || cfg.n_fft > kMaxFft) r.fail("n_fft", "must be in [1, 65536]");
  try {
    (void)cfg.plan();
  } catch (const std::invalid_argument& e) {
    r.fail("guard_nulls_per_side", e.what());
  }
  if (cfg.schemes.empty()) r.fail("scheme", "at least one scheme is required");
  if (cfg.experiment != Experiment::kPaprCcdf && cfg.schemes.size() != 1)
    r.fail("scheme", "exactly one scheme is required for " + std::string(to_string(cfg.experiment)));

  auto check_cp = [&](std::size_t cp, const std::string& key) {
    if (cp >= cfg.n_fft)
      r.fail(key, "cyclic prefix length " + std::to_string(cp) + " must be < n_fft " + std::to_string(cfg.n_fft));
    if (cfg.rolloff_len > cp)
      r.fail("rolloff_len", "rolloff_len " + std::to_string(cfg.rolloff_len) +
                                " must not exceed the cyclic prefix length " + std::to_string(cp));
  };
  check_cp(cfg.cp_len, "cp_len");

  if (cfg.tx_filter) {
    try {
      (void)design_lowpass(cfg.tx_filter->num_taps, cfg.tx_filter->cutoff);
    } catch (const std::invalid_argument& e) {
      const bool taps_bad = cfg.tx_filter->num_taps == 0 || cfg.tx_filter->num_taps % 2 == 0;
      r.fail(taps_bad ? "tx_filter.num_taps" : "tx_filter.cutoff", e.what());
    }
  }

  if (!std::isfinite(cfg.epsilon)) r.fail("impairments.epsilon", "must be finite");
  if (!std::isfinite(cfg.phase_noise_sigma) || cfg.phase_noise_sigma < 0.0)
    r.fail("impairments.phase_noise_sigma", "must be >= 0");
  if (cfg.snr_db && !std::isfinite(*cfg.snr_db)) r.fail("impairments.snr_db", "must be finite");
  if (cfg.taps) {
    try {
      const ChannelProfile profile(*cfg.taps);
      if (cfg.taps->size() > cfg.n_fft) r.fail("impairments.taps", "more taps than n_fft");
    } catch (const std::invalid_argument& e) {
      r.fail("impairments.taps", e.what());
    }
  }

  const std::string& var = cfg.sweep_variable;
  auto require_var = [&](std::initializer_list<std::string_view> allowed) {
    if (var.empty()) return;
    if (std::find(allowed.begin(), allowed.end(), var) == allowed.end()) {
      r.fail("sweep.variable", "'" + var + "' is not a sweep variable of " +
                                   std::string(to_string(cfg.experiment)));
    }
  };
  if (!var.empty() && cfg.sweep_values.empty()) r.fail("sweep.values", "at least one value is required");
  for (double v : cfg.sweep_values)
    if (!std::isfinite(v)) r.fail("sweep.values", "values must be finite");

  // Impairments an experiment does not model are rejected rather than ignored.
  auto reject_impairments = [&](bool allow_cfo_and_noise) {
    if (cfg.taps) r.fail("impairments.taps", "not used by " + std::string(to_string(cfg.experiment)));
    if (cfg.phase_noise_sigma != 0.0)
      r.fail("impairments.phase_noise_sigma", "not used by " + std::string(to_string(cfg.experiment)));
    if (allow_cfo_and_noise) return;
    if (cfg.epsilon != 0.0) r.fail("impairments.epsilon", "not used by " + std::string(to_string(cfg.experiment)));
    if (cfg.snr_db) r.fail("impairments.snr_db", "not used by " + std::string(to_string(cfg.experiment)));
  };

  switch (cfg.experiment) {
    case Experiment::kPsd:
    case Experiment::kPaprCcdf:
      require_var({});
      reject_impairments(false);
      break;
    case Experiment::kBerSweep:
      require_var({"ebn0_db"});
      if (!var.empty() && cfg.snr_db)
        r.fail("impairments.snr_db", "must be null when sweeping ebn0_db (the sweep sets the noise level)");
      break;
    case Experiment::kCfoSweep:
      require_var({"epsilon"});
      reject_impairments(true);
      if (var.empty() && !(std::fabs(cfg.epsilon) < 0.5))
        r.fail("impairments.epsilon", "|epsilon| must be < 0.5");
      for (double v : cfg.sweep_values)
        if (!(std::fabs(v) < 0.5)) r.fail("sweep.values", "|epsilon| must be < 0.5");
      break;
    case Experiment::kCpSweep:
      require_var({"cp_len"});
      for (double v : cfg.sweep_values) {
        if (v < 0 || v != std::floor(v)) r.fail("sweep.values", "cp_len values must be non-negative integers");
        check_cp(static_cast<std::size_t>(v), "sweep.values");
      }
      break;
  }

  if (cfg.n_trials == 0) r.fail("n_trials", "must be >= 1");
  if (cfg.symbols_per_trial == 0) r.fail("symbols_per_trial", "must be >= 1");
  for (double t : cfg.thresholds_db)
    if (!std::isfinite(t)) r.fail("thresholds_db", "thresholds must be finite");
  if (cfg.experiment == Experiment::kPaprCcdf && cfg.thresholds_db.empty())
    r.fail("thresholds_db", "at least one threshold is required");
  if (cfg.clip_ratio_db && !std::isfinite(*cfg.clip_ratio_db)) r.fail("clip_ratio_db", "must be finite");

  if (cfg.psd.segment_len == 0 || cfg.psd.segment_len > kMaxSegment)
    r.fail("psd.segment_len", "must be in [1, 1048576]");
  if (cfg.psd.overlap >= cfg.psd.segment_len) r.fail("psd.overlap", "must be < psd.segment_len");
  if (cfg.experiment == Experiment::kPsd) {
    const std::size_t stream = cfg.n_trials * (cfg.n_fft + cfg.cp_len) + cfg.rolloff_len;
    if (stream < cfg.psd.segment_len) {
      r.fail("n_trials", std::to_string(cfg.n_trials) + " symbols give " + std::to_string(stream) +
                             " samples, fewer than psd.segment_len " + std::to_string(cfg.psd.segment_len));
    }
  }
}

std::string to_json(const ScenarioConfig& cfg, int indent) {
  ojson j;
  j["schema_version"] = kConfigSchemaVersion;
  j["experiment"] = std::string(to_string(cfg.experiment));
  j["n_fft"] = cfg.n_fft;
  j["null_dc"] = cfg.null_dc;
  j["guard_nulls_per_side"] = cfg.guard_nulls_per_side;
  if (cfg.schemes.size() == 1) {
    j["scheme"] = std::string(to_string(cfg.schemes.front()));
  } else {
    ojson arr = ojson::array();
    for (Scheme s : cfg.schemes) arr.push_back(std::string(to_string(s)));
    j["scheme"] = arr;
  }
  j["cp_len"] = cfg.cp_len;
  j["rolloff_len"] = cfg.rolloff_len;
  if (cfg.tx_filter) {
    j["tx_filter"] = ojson{{"num_taps", cfg.tx_filter->num_taps}, {"cutoff", cfg.tx_filter->cutoff}};
  } else {
    j["tx_filter"] = nullptr;
  }
  ojson imp;
  imp["epsilon"] = cfg.epsilon;
  imp["phase_noise_sigma"] = cfg.phase_noise_sigma;
  imp["snr_db"] = cfg.snr_db ? ojson(*cfg.snr_db) : ojson(nullptr);
  if (cfg.taps) {
    ojson taps = ojson::array();
    for (const Complex& t : *cfg.taps) taps.push_back(ojson::array({t.real(), t.imag()}));
    imp["taps"] = taps;
  } else {
    imp["taps"] = nullptr;
  }
  j["impairments"] = imp;
  if (cfg.sweep_variable.empty()) {
    j["sweep"] = nullptr;
  } else {
    j["sweep"] = ojson{{"variable", cfg.sweep_variable}, {"values", cfg.sweep_values}};
  }
  j["n_trials"] = cfg.n_trials;
  j["symbols_per_trial"] = cfg.symbols_per_trial;
  j["thresholds_db"] = cfg.thresholds_db;
  j["clip_ratio_db"] = cfg.clip_ratio_db ? ojson(*cfg.clip_ratio_db) : ojson(nullptr);
  j["psd"] = ojson{{"segment_len", cfg.psd.segment_len},
                   {"overlap", cfg.psd.overlap},
                   {"window", to_string(cfg.psd.window)}};
  j["seed"] = cfg.seed;
  j["output"] = cfg.output;
  return j.dump(indent);
}

namespace {

ScenarioConfig base(Experiment e, std::size_t n_fft) {
  ScenarioConfig c;
  c.experiment = e;
  c.n_fft = n_fft;
  c.psd = PsdParams::defaults_for(n_fft);
  c.thresholds_db = default_thresholds();
  return c;
}

}  // namespace

std::optional<ScenarioConfig> preset(Experiment e, std::string_view name) {
  switch (e) {
    case Experiment::kPsd:
      if (name == "fig1") {
        // 64 subcarriers, all active, QPSK.
        ScenarioConfig c = base(e, 64);
        c.n_trials = 1000;
        return c;
      }
      if (name == "fig2") {
        // DC null and 11 nulls per side. The transmit filter and the long
        // segment are what make the null bands measurable below -30 dB; a
        // cyclic prefix would fill the single-bin DC notch.
        ScenarioConfig c = base(e, 64);
        c.null_dc = true;
        c.guard_nulls_per_side = 11;
        c.tx_filter = FilterSpec{127, 0.345};
        c.n_trials = 10000;
        c.psd = PsdParams{4096, 2048, WindowKind::kHann};
        return c;
      }
      break;
    case Experiment::kPaprCcdf:
      if (name == "fig5") {
        ScenarioConfig c = base(e, 128);
        c.schemes = {Scheme::kBpsk, Scheme::kQpsk, Scheme::kQam16};
        c.n_trials = 100000;
        return c;
      }
      break;
    case Experiment::kBerSweep:
      if (name == "awgn") {
        ScenarioConfig c = base(e, 64);
        c.sweep_variable = "ebn0_db";
        c.sweep_values = {0, 2, 4, 6, 8};
        c.symbols_per_trial = 16;
        c.n_trials = 489;  // 489 * 16 * 128 bits > 1e6 per point
        return c;
      }
      break;
    case Experiment::kCfoSweep:
      if (name == "sweep") {
        ScenarioConfig c = base(e, 64);
        c.sweep_variable = "epsilon";
        c.sweep_values = {0.0, 0.02, 0.05, 0.1, 0.2, 0.3, 0.4};
        c.snr_db = 15.0;
        c.n_trials = 1000;
        return c;
      }
      break;
    case Experiment::kCpSweep:
      if (name == "sweep") {
        ScenarioConfig c = base(e, 64);
        c.taps = std::vector<Complex>{{1.0, 0.0}, {0.6, -0.3}, {0.4, 0.2}, {-0.25, 0.1}, {0.0, 0.15}};
        c.sweep_variable = "cp_len";
        c.sweep_values = {0, 1, 2, 3, 4, 5, 6, 8, 12, 16};
        c.symbols_per_trial = 16;
        c.n_trials = 32;
        return c;
      }
      break;
  }
  return std::nullopt;
}

std::vector<std::string> preset_names(Experiment e) {
  switch (e) {
    case Experiment::kPsd: return {"fig1", "fig2"};
    case Experiment::kPaprCcdf: return {"fig5"};
    case Experiment::kBerSweep: return {"awgn"};
    case Experiment::kCfoSweep: return {"sweep"};
    case Experiment::kCpSweep: return {"sweep"};
  }
  return {};
}

}  // namespace ofdm::harness
