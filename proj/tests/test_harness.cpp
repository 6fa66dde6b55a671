#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <unistd.h>

#include "ofdm/harness/cli.hpp"
#include "ofdm/harness/experiments.hpp"
#include "support.hpp"

using namespace ofdm;
using namespace ofdm::harness;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out, err;
};

CliResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "ofdmsim");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("ofdmkit_harness_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const fs::path p = scratch_dir() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double cell(const CsvTable& t, std::size_t row, std::size_t col) { return std::get<double>(t.rows.at(row).at(col)); }

ScenarioConfig must_preset(Experiment e, const char* name) {
  auto p = preset(e, name);
  REQUIRE(p.has_value());
  return *p;
}

}  // namespace

TEST_CASE("CSV formatting") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0 / 3.0) == "0.333333333333");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(INFINITY) == "inf");
  CHECK(format_double(-INFINITY) == "-inf");
  CHECK(format_double(NAN) == "nan");
  CHECK(format_double(1e-20) == "1e-20");
  CsvTable t;
  t.columns = {"a", "b", "c"};
  t.add_row({1.5, std::int64_t{7}, std::string("QPSK")});
  CHECK(t.to_string() == "a,b,c\n1.5,7,QPSK\n");
  CHECK_THROWS(t.add_row({1.0}));
}

TEST_CASE("config parsing and line-precise errors") {
  const std::string good = R"({
  "experiment": "ber_sweep",
  "n_fft": 64,
  "scheme": "QPSK",
  "impairments": {"snr_db": "off", "taps": "identity"},
  "n_trials": 2
})";
  const ScenarioConfig c = parse_config(good);
  CHECK(c.experiment == Experiment::kBerSweep);
  CHECK_FALSE(c.snr_db.has_value());
  CHECK_FALSE(c.taps.has_value());
  CHECK(c.n_trials == 2);

  const std::string bad_cp = R"({
  "experiment": "ber_sweep",
  "n_fft": 64,
  "cp_len": 64
})";
  try {
    parse_config(bad_cp, "bad.json");
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "cp_len");
    CHECK(e.line() == 4);
    CHECK(std::string(e.what()).find("bad.json:4: cp_len") == 0);
  }

  const std::string typo = "{\n  \"experiment\": \"psd\",\n  \"nfft\": 64\n}";
  try {
    parse_config(typo);
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "nfft");
    CHECK(e.line() == 3);
  }

  CHECK_THROWS_AS(parse_config("{\"experiment\": \"ber_sweep\",}"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"experiment": "psd", "n_trials": 0})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"experiment": "cfo_sweep", "impairments": {"epsilon": 0.5}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"experiment": "cfo_sweep", "sweep": {"variable": "epsilon", "values": [0.1, -0.7]}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"experiment": "ber_sweep", "rolloff_len": 4, "cp_len": 2})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"experiment": "ber_sweep", "impairments": {"phase_noise_sigma": -1}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"experiment": "ber_sweep", "impairments": {"taps": [[0, 0]]}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"experiment": "ber_sweep", "n_fft": 8, "null_dc": true, "guard_nulls_per_side": 4})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"experiment": "cp_sweep", "sweep": {"variable": "cp_len", "values": [1.5]}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"experiment": "ber_sweep", "tx_filter": {"num_taps": 10}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"experiment": "ber_sweep", "scheme": "8PSK"})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"experiment": "papr_ccdf", "impairments": {"snr_db": 10}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"experiment": "ber_sweep", "sweep": {"variable": "ebn0_db", "values": [1]},
                                   "impairments": {"snr_db": 10}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"n_fft": 64})"), ConfigError);
}

TEST_CASE("resolved config round-trips through JSON") {
  for (Experiment e : {Experiment::kPsd, Experiment::kPaprCcdf, Experiment::kBerSweep, Experiment::kCfoSweep,
                       Experiment::kCpSweep}) {
    for (const std::string& name : preset_names(e)) {
      CAPTURE(name);
      const ScenarioConfig c = must_preset(e, name.c_str());
      CHECK_NOTHROW(validate(c));
      const std::string j = to_json(c);
      CHECK(to_json(parse_config(j)) == j);
    }
  }
}

TEST_CASE("zero symbols is a validation error") {
  ScenarioConfig c = must_preset(Experiment::kPsd, "fig1");
  c.n_trials = 0;
  CHECK_THROWS_AS(run_psd(c), ConfigError);
}

TEST_CASE("PSD fig2 preset suppresses DC and guards by 30 dB") {
  const RunReport r = run_psd(must_preset(Experiment::kPsd, "fig2"));
  double dc = INFINITY, guard = -INFINITY;
  for (std::size_t i = 0; i < r.table.rows.size(); ++i) {
    const double f = cell(r.table, i, 0), p = cell(r.table, i, 1);
    if (f == 0.0) dc = p;
    // Guard interior: at least three subcarrier spacings from the nearest active one.
    if (f >= 23.0 / 64.0 || f <= -24.0 / 64.0) guard = std::max(guard, p);
  }
  MESSAGE("fig2: DC " << dc << " dB, guard interior max " << guard << " dB");
  CHECK(dc <= -30.0);
  CHECK(guard <= -30.0);
}

TEST_CASE("PSD fig1 preset is flat in band") {
  const RunReport r = run_psd(must_preset(Experiment::kPsd, "fig1"));
  double lo = INFINITY, hi = -INFINITY;
  for (int k = -32; k < 32; ++k) {
    const double f = k / 64.0;
    for (std::size_t i = 0; i < r.table.rows.size(); ++i) {
      if (std::abs(cell(r.table, i, 0) - f) < 1e-12) {
        lo = std::min(lo, cell(r.table, i, 1));
        hi = std::max(hi, cell(r.table, i, 1));
      }
    }
  }
  CHECK(hi - lo < 3.0);
}

TEST_CASE("PAPR CCDF: unsorted thresholds and single trial") {
  ScenarioConfig c = must_preset(Experiment::kPaprCcdf, "fig5");
  c.schemes = {Scheme::kQpsk};
  c.n_trials = 1;
  c.thresholds_db = {9.0, 0.0, 3.0, 12.0};
  const std::string text = to_json(c);
  const ScenarioConfig parsed = parse_config(text);
  CHECK(parsed.thresholds_db == std::vector<double>{0.0, 3.0, 9.0, 12.0});
  const RunReport r = run_papr_ccdf(parsed);
  REQUIRE(r.table.rows.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    if (i > 0) CHECK(cell(r.table, i, 1) > cell(r.table, i - 1, 1));
    const double p = cell(r.table, i, 2);
    CHECK((p == 0.0 || p == 1.0));
  }
}

TEST_CASE("BER over AWGN follows the Q function") {
  ScenarioConfig c = must_preset(Experiment::kBerSweep, "awgn");
  c.sweep_values = {4.0};
  const RunReport r = run_ber_sweep(c);
  const double bits = static_cast<double>(std::get<std::int64_t>(r.table.rows[0][4]));
  CHECK(bits >= 1e6);
  const double expect = 0.012500818040737559791;  // Q(sqrt(2 * 10^0.4)), mpmath
  const double sd = std::sqrt(expect * (1.0 - expect) / bits);
  CHECK(std::abs(cell(r.table, 0, 2) - expect) < 3.0 * sd);
  CHECK(cell(r.table, 0, 1) == doctest::Approx(4.0 + 10.0 * std::log10(2.0)));
}

TEST_CASE("BER is zero with noise off and non-increasing along the sweep") {
  ScenarioConfig quiet = must_preset(Experiment::kBerSweep, "awgn");
  quiet.sweep_variable.clear();
  quiet.sweep_values.clear();
  quiet.snr_db.reset();
  const RunReport q = run_ber_sweep(quiet);
  REQUIRE(q.table.rows.size() == 1);
  CHECK(cell(q.table, 0, 2) == 0.0);
  CHECK(std::get<std::int64_t>(q.table.rows[0][4]) >= 1000000);

  const RunReport r = run_ber_sweep(must_preset(Experiment::kBerSweep, "awgn"));
  for (std::size_t i = 1; i < r.table.rows.size(); ++i) CHECK(cell(r.table, i, 2) <= cell(r.table, i - 1, 2));
  bool documented = false;
  for (const auto& [k, v] : r.header) documented |= v.find("10*log10(R * bps * Na / (N + Ng))") != std::string::npos;
  CHECK(documented);
}

TEST_CASE("Eb/N0 conversion counts CP and nulls") {
  ScenarioConfig c;
  c.n_fft = 64;
  c.null_dc = true;
  c.guard_nulls_per_side = 11;
  c.cp_len = 16;
  c.schemes = {Scheme::kQam16};
  CHECK(ebn0_to_snr_db(3.0, c) == doctest::Approx(3.0 + 10.0 * std::log10(4.0 * 41.0 / 80.0)));
}

TEST_CASE("CFO sweep") {
  const RunReport r = run_cfo_sweep(must_preset(Experiment::kCfoSweep, "sweep"));
  std::map<double, std::size_t> row;
  for (std::size_t i = 0; i < r.table.rows.size(); ++i) row[cell(r.table, i, 0)] = i;
  CHECK(cell(r.table, row.at(0.0), 3) < 1e-9);
  for (double eps : {0.05, 0.1, 0.2}) {
    CAPTURE(eps);
    CHECK(std::abs(cell(r.table, row.at(eps), 1) - cell(r.table, row.at(eps), 2)) < 0.2);
  }
  for (std::size_t i = 1; i < r.table.rows.size(); ++i) CHECK(cell(r.table, i, 4) >= cell(r.table, i - 1, 4));
}

TEST_CASE("CP sweep") {
  const ScenarioConfig c = must_preset(Experiment::kCpSweep, "sweep");
  const std::size_t tau = c.taps->size() - 1;
  const RunReport r = run_cp_sweep(c);
  double worst_covered = 0.0, best_short = INFINITY;
  for (std::size_t i = 0; i < r.table.rows.size(); ++i) {
    const auto ng = static_cast<std::size_t>(std::get<std::int64_t>(r.table.rows[i][0]));
    const double e = cell(r.table, i, 2);
    if (ng >= tau) {
      CHECK(e < 1e-9);
      CHECK(cell(r.table, i, 3) == 0.0);
      worst_covered = std::max(worst_covered, e);
    } else {
      CHECK(e > 1e-3);
      best_short = std::min(best_short, e);
    }
  }
  CHECK(best_short > worst_covered);

  ScenarioConfig flat = c;
  flat.taps = std::vector<Complex>{1.0};
  flat.sweep_values = {0.0};
  const RunReport f = run_cp_sweep(flat);
  CHECK(cell(f.table, 0, 2) < 1e-9);
}

TEST_CASE("CLI exit codes and messages") {
  CHECK(run_cli({}).code == 1);
  CHECK(run_cli({"bogus"}).code == 1);
  CHECK(run_cli({"ber", "--nope"}).code == 1);
  CHECK(run_cli({"ber"}).code == 1);
  CHECK(run_cli({"ber", "--preset", "fig5"}).code == 1);
  CHECK(run_cli({"ber", "--help"}).code == 0);

  const std::string bad = write_temp("bad.json", "{\n  \"experiment\": \"ber_sweep\",\n  \"n_fft\": 64,\n  \"cp_len\": 64\n}\n");
  const CliResult r = run_cli({"ber", "--config", bad});
  CHECK(r.code == 1);
  CHECK(r.err.find("cp_len") != std::string::npos);

  const std::string other = write_temp("psd.json", R"({"experiment": "psd"})");
  const CliResult m = run_cli({"ber", "--config", other});
  CHECK(m.code == 1);
  CHECK(m.err.find("experiment") != std::string::npos);

  CHECK(run_cli({"ber", "--config", (scratch_dir() / "missing.json").string()}).code == 1);

  const CliResult list = run_cli({"presets"});
  CHECK(list.code == 0);
  CHECK(list.out.find("fig5") != std::string::npos);
  const CliResult one = run_cli({"presets", "papr_ccdf", "fig5"});
  CHECK(one.code == 0);
  CHECK(parse_config(one.out).n_fft == 128);
}

TEST_CASE("CLI output is reproducible and thread-count independent") {
  const std::string a = (scratch_dir() / "a.csv").string(), b = (scratch_dir() / "b.csv").string();
  REQUIRE(run_cli({"cfo", "--preset", "sweep", "--threads", "1", "--out", a}).code == 0);
  REQUIRE(run_cli({"cfo", "--preset", "sweep", "--threads", "8", "--out", b}).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(!slurp(a).empty());

  const CliResult s1 = run_cli({"cp", "--preset", "sweep", "--seed", "7"});
  const CliResult s2 = run_cli({"cp", "--preset", "sweep", "--seed", "7", "--threads", "3"});
  CHECK(s1.code == 0);
  CHECK(s1.out == s2.out);
  const CliResult s3 = run_cli({"cp", "--preset", "sweep", "--seed", "8"});
  CHECK(s3.out != s1.out);
}

TEST_CASE("replaying the sidecar reproduces the table") {
  const std::string out = (scratch_dir() / "replay.csv").string();
  REQUIRE(run_cli({"cp", "--preset", "sweep", "--seed", "99", "--out", out}).code == 0);
  const std::string first = slurp(out);
  const std::string sidecar = slurp(out + ".json");
  CHECK(sidecar.find("\"seed\": 99") != std::string::npos);
  CHECK(sidecar.find("\"wall_seconds\"") != std::string::npos);
  CHECK(sidecar.find("\"library_version\"") != std::string::npos);

  const std::string replay = (scratch_dir() / "replay2.csv").string();
  const std::string cfg_path = write_temp("replay.json", sidecar);
  REQUIRE(run_cli({"cp", "--config", cfg_path, "--out", replay}).code == 0);
  CHECK(slurp(replay) == first);
}
