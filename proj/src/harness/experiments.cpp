#include "ofdm/harness/experiments.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "ofdm/channel.hpp"
#include "ofdm/modem.hpp"
#include "ofdm/parallel.hpp"
#include "ofdm/rng.hpp"
#include "ofdm/simd/kernels.hpp"
#include "ofdm/transform.hpp"

namespace ofdm::harness {
namespace {

using Clock = std::chrono::steady_clock;

RunReport start_report(const ScenarioConfig& cfg) {
  RunReport r;
  r.config = cfg;
  r.library_version = library_version();
  r.simd_kernels = std::string(simd::active_kernels().name);
  return r;
}

void finish(RunReport& r, Clock::time_point t0) {
  r.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<double> sweep_points(const ScenarioConfig& cfg, double single) {
  return cfg.sweep_variable.empty() ? std::vector<double>{single} : cfg.sweep_values;
}

double to_db(double linear) { return linear > 0.0 ? 10.0 * std::log10(linear) : -INFINITY; }

// Shared transmit/receive chain for the streamed-frame experiments.
class Link {
 public:
  Link(const ScenarioConfig& cfg, std::size_t cp_len)
      : cfg_(cfg),
        plan_(cfg.plan()),
        constellation_(Constellation::get(cfg.schemes.front())),
        fft_(cfg.n_fft),
        cp_(cfg.n_fft, cp_len) {
    if (cfg.taps) {
      profile_.emplace(*cfg.taps);
      response_ = profile_->frequency_response(cfg.n_fft);
    }
  }

  struct Stats {
    std::uint64_t bit_errors = 0;
    std::uint64_t bits = 0;
    double error_power = 0.0;
    double reference_power = 0.0;

    void merge(const Stats& o) {
      bit_errors += o.bit_errors;
      bits += o.bits;
      error_power += o.error_power;
      reference_power += o.reference_power;
    }
  };

  std::size_t info_bits_per_symbol() const {
    return static_cast<std::size_t>(static_cast<double>(plan_.active_count() * constellation_.bits_per_symbol()) *
                                    coder_.rate());
  }

  Stats run_frame(std::uint64_t trial, std::optional<double> snr_db) const {
    const std::size_t n_sym = cfg_.symbols_per_trial;
    const std::size_t hop = cp_.symbol_len();
    RngStream data(cfg_.seed, derive_stream_id(trial, StreamPurpose::kData));

    std::vector<Bits> info(n_sym);
    std::vector<std::vector<Complex>> tx(n_sym);
    std::vector<TimeSignal> shaped(n_sym);
    for (std::size_t s = 0; s < n_sym; ++s) {
      info[s] = data.bits(info_bits_per_symbol());
      tx[s] = map_bits(coder_.encode(info[s]), constellation_);
      const TimeSignal x = fft_.inverse(allocate(tx[s], plan_));
      shaped[s] = apply_edge_window(add_cyclic_prefix(x, cp_), cfg_.rolloff_len);
    }
    TimeSignal stream = serialize_symbols(shaped, hop);
    stream.origin = 0;
    if (cfg_.tx_filter) {
      const std::size_t len = stream.size();
      stream = compensate_delay(tx_filter(stream, cfg_.tx_filter->num_taps, cfg_.tx_filter->cutoff),
                                filter_delay(cfg_.tx_filter->num_taps), len);
    }

    if (profile_) stream = apply_multipath(stream, *profile_);
    if (cfg_.epsilon != 0.0) stream = apply_cfo(stream, cfg_.epsilon, cfg_.n_fft);
    if (cfg_.phase_noise_sigma > 0.0) {
      RngStream pn(cfg_.seed, derive_stream_id(trial, StreamPurpose::kPhaseNoise));
      stream = apply_phase_noise(stream, cfg_.phase_noise_sigma, pn);
    }
    if (snr_db) {
      RngStream noise(cfg_.seed, derive_stream_id(trial, StreamPurpose::kAwgn));
      stream = apply_awgn(stream, *snr_db, noise);
    }

    Stats st;
    for (std::size_t s = 0; s < n_sym; ++s) {
      const auto first = stream.samples.begin() + static_cast<std::ptrdiff_t>(s * hop);
      const TimeSignal block(std::vector<Complex>(first, first + static_cast<std::ptrdiff_t>(hop)));
      Spectrum Y = fft_.forward(remove_cyclic_prefix(block, cp_));
      if (profile_) {
        for (std::size_t k : plan_.active_indices()) Y[k] /= response_[k];
      }
      const std::vector<Complex> rx = deallocate(Y, plan_);
      for (std::size_t i = 0; i < rx.size(); ++i) {
        st.error_power += std::norm(rx[i] - tx[s][i]);
        st.reference_power += std::norm(tx[s][i]);
      }
      const Bits decoded = coder_.decode(demap_symbols(rx, constellation_));
      st.bit_errors += bit_errors(info[s], decoded);
      st.bits += info[s].size();
    }
    return st;
  }

  Stats run_point(std::size_t point, std::optional<double> snr_db, unsigned threads) const {
    std::vector<Stats> per_trial(cfg_.n_trials);
    parallel_for(cfg_.n_trials, threads, [&](std::size_t t) {
      per_trial[t] = run_frame(static_cast<std::uint64_t>(point) * cfg_.n_trials + t, snr_db);
    });
    Stats total;
    for (const Stats& s : per_trial) total.merge(s);
    return total;
  }

 private:
  const ScenarioConfig& cfg_;
  SubcarrierPlan plan_;
  const Constellation& constellation_;
  FftPlan fft_;
  CyclicPrefixSpec cp_;
  std::optional<ChannelProfile> profile_;
  std::vector<Complex> response_;
  PassThroughCoder coder_;
};

double ratio(std::uint64_t num, std::uint64_t den) {
  return den ? static_cast<double>(num) / static_cast<double>(den) : 0.0;
}

}  // namespace

std::string library_version() {
#ifdef OFDMKIT_VERSION
  return OFDMKIT_VERSION;
#else
  return "unknown";
#endif
}

double ebn0_to_snr_db(double ebn0_db, const ScenarioConfig& cfg) {
  const double bps = Constellation::get(cfg.schemes.front()).bits_per_symbol();
  const double active = static_cast<double>(cfg.plan().active_count());
  const double rate = PassThroughCoder{}.rate();
  return ebn0_db + 10.0 * std::log10(rate * bps * active / static_cast<double>(cfg.n_fft + cfg.cp_len));
}

RunReport run_psd(const ScenarioConfig& cfg, unsigned threads) {
  validate(cfg);
  const auto t0 = Clock::now();
  RunReport report = start_report(cfg);
  const SubcarrierPlan plan = cfg.plan();
  const Constellation& c = Constellation::get(cfg.schemes.front());
  const FftPlan fft(cfg.n_fft);
  const CyclicPrefixSpec cp(cfg.n_fft, cfg.cp_len);

  std::vector<TimeSignal> shaped(cfg.n_trials);
  parallel_for(cfg.n_trials, threads, [&](std::size_t i) {
    RngStream data(cfg.seed, derive_stream_id(i, StreamPurpose::kData));
    const Bits bits = data.bits(plan.active_count() * c.bits_per_symbol());
    const TimeSignal x = fft.inverse(allocate(map_bits(bits, c), plan));
    shaped[i] = apply_edge_window(add_cyclic_prefix(x, cp), cfg.rolloff_len);
  });
  TimeSignal stream = serialize_symbols(shaped, cp.symbol_len());
  if (cfg.tx_filter) {
    const std::size_t len = stream.size();
    stream = compensate_delay(tx_filter(stream, cfg.tx_filter->num_taps, cfg.tx_filter->cutoff),
                              filter_delay(cfg.tx_filter->num_taps), len);
  }

  std::vector<double> band;
  for (std::size_t k : plan.active_indices()) band.push_back(plan.bin_frequency(k));
  const PsdEstimate est = estimate_psd(stream, cfg.psd, band);

  report.table.columns = {"freq_cycles_per_sample", "power_db"};
  for (std::size_t i = 0; i < est.freq_bins.size(); ++i) {
    report.table.add_row({est.freq_bins[i], est.power_db[i]});
  }
  report.header = {
      {"frequency", "normalized, cycles/sample; subcarrier k sits at k/N (negative above N/2)"},
      {"power", "dB relative to the mean over the active subcarrier frequencies"},
      {"estimator", "Welch averaged periodogram, window=" + to_string(est.window) +
                        ", segment_len=" + std::to_string(est.segment_len) +
                        ", overlap=" + std::to_string(est.overlap) +
                        ", segments=" + std::to_string(est.segments)},
      {"signal", "transmit stream: " + std::to_string(cfg.n_trials) + " symbols, cp_len=" +
                     std::to_string(cfg.cp_len) + ", rolloff_len=" + std::to_string(cfg.rolloff_len) +
                     (cfg.tx_filter ? ", tx_filter num_taps=" + std::to_string(cfg.tx_filter->num_taps) +
                                          " cutoff=" + format_double(cfg.tx_filter->cutoff)
                                    : std::string(", no tx_filter"))},
  };
  finish(report, t0);
  return report;
}

RunReport run_papr_ccdf(const ScenarioConfig& cfg, unsigned threads) {
  validate(cfg);
  const auto t0 = Clock::now();
  RunReport report = start_report(cfg);
  report.table.columns = {"scheme", "threshold_db", "ccdf_symbol_papr", "ccdf_sample_power"};
  report.header.emplace_back("symbol_papr", "P(max|x|^2 / mean|x|^2 > threshold) per symbol, N useful samples, CP excluded");
  report.header.emplace_back("sample_power", "P(|x(n)|^2 / mean|x|^2 > threshold) over all samples");
  for (std::size_t si = 0; si < cfg.schemes.size(); ++si) {
    PaprCcdfRun run;
    run.scheme = cfg.schemes[si];
    run.plan = cfg.plan();
    run.n_symbols = cfg.n_trials;
    run.seed = cfg.seed;
    run.clip_ratio_db = cfg.clip_ratio_db;
    run.first_trial = static_cast<std::uint64_t>(si) * cfg.n_trials;
    run.threads = threads;
    const PaprCcdf res = papr_ccdf(run, cfg.thresholds_db);
    const std::string name(to_string(run.scheme));
    for (std::size_t t = 0; t < res.symbol_papr.thresholds_db.size(); ++t) {
      report.table.add_row({name, res.symbol_papr.thresholds_db[t], res.symbol_papr.exceed_prob[t],
                            res.sample_power.exceed_prob[t]});
    }
    if (cfg.n_trials >= 100) {
      report.header.emplace_back("papr_db_at_1e-2[" + name + "]",
                                 format_double(ccdf_crossing(res.papr_db, 1e-2)));
    }
  }
  finish(report, t0);
  return report;
}

RunReport run_ber_sweep(const ScenarioConfig& cfg, unsigned threads) {
  validate(cfg);
  const auto t0 = Clock::now();
  RunReport report = start_report(cfg);
  const Link link(cfg, cfg.cp_len);
  const double offset_db = ebn0_to_snr_db(0.0, cfg);

  report.table.columns = {"ebn0_db", "snr_db", "ber", "bit_errors", "bits"};
  const bool swept = !cfg.sweep_variable.empty();
  const std::vector<double> points = swept ? cfg.sweep_values : std::vector<double>{0.0};
  for (std::size_t p = 0; p < points.size(); ++p) {
    std::optional<double> snr;
    double ebn0 = INFINITY;
    if (swept) {
      ebn0 = points[p];
      snr = ebn0 + offset_db;
    } else if (cfg.snr_db) {
      snr = cfg.snr_db;
      ebn0 = *cfg.snr_db - offset_db;
    }
    const Link::Stats st = link.run_point(p, snr, threads);
    report.table.add_row({ebn0, snr ? *snr : INFINITY, ratio(st.bit_errors, st.bits),
                          static_cast<std::int64_t>(st.bit_errors), static_cast<std::int64_t>(st.bits)});
  }
  report.header = {
      {"ebn0_to_snr", "snr_db = ebn0_db + 10*log10(R * bps * Na / (N + Ng)) = ebn0_db + " +
                          format_double(offset_db) + " dB"},
      {"ebn0_terms", "R=1 (pass-through coding), bps=" +
                         std::to_string(Constellation::get(cfg.schemes.front()).bits_per_symbol()) +
                         ", Na=" + std::to_string(cfg.plan().active_count()) + ", N=" +
                         std::to_string(cfg.n_fft) + ", Ng=" + std::to_string(cfg.cp_len)},
      {"snr_reference", "noise variance N0 = P/10^(snr_db/10), P = measured mean power of each transmitted frame"},
  };
  finish(report, t0);
  return report;
}

RunReport run_cfo_sweep(const ScenarioConfig& cfg, unsigned threads) {
  validate(cfg);
  const auto t0 = Clock::now();
  RunReport report = start_report(cfg);
  const SubcarrierPlan plan = cfg.plan();
  const Constellation& c = Constellation::get(cfg.schemes.front());
  const FftPlan fft(cfg.n_fft);
  const CyclicPrefixSpec cp(cfg.n_fft, cfg.cp_len);
  const std::size_t bits_per_symbol = plan.active_count() * c.bits_per_symbol();

  report.table.columns = {"epsilon", "predicted_sinr_db", "measured_sinr_db", "evm", "ber", "bits"};
  const std::vector<double> points = sweep_points(cfg, cfg.epsilon);
  for (std::size_t p = 0; p < points.size(); ++p) {
    const double eps = points[p];
    struct Trial {
      Bits bits;
      std::vector<Complex> tx, clean, noisy;
    };
    std::vector<Trial> trials(cfg.n_trials);
    parallel_for(cfg.n_trials, threads, [&](std::size_t t) {
      const std::uint64_t trial = static_cast<std::uint64_t>(p) * cfg.n_trials + t;
      RngStream data(cfg.seed, derive_stream_id(trial, StreamPurpose::kData));
      Trial& tr = trials[t];
      tr.bits = data.bits(bits_per_symbol);
      tr.tx = map_bits(tr.bits, c);
      // Each symbol on its own with sample_index_origin 0.
      TimeSignal y = apply_cfo(add_cyclic_prefix(fft.inverse(allocate(tr.tx, plan)), cp).samples(), eps, cfg.n_fft);
      tr.clean = deallocate(fft.forward(remove_cyclic_prefix(y, cp)), plan);
      if (cfg.snr_db) {
        RngStream noise(cfg.seed, derive_stream_id(trial, StreamPurpose::kAwgn));
        y = apply_awgn(y, *cfg.snr_db, noise);
        tr.noisy = deallocate(fft.forward(remove_cyclic_prefix(y, cp)), plan);
      } else {
        tr.noisy = tr.clean;
      }
    });

    // Data-aided common complex gain: removes the S(eps) rotation/attenuation
    // shared by every subcarrier, leaving the inter-carrier leakage as error.
    Complex cross{};
    double ref = 0.0;
    for (const Trial& tr : trials) {
      for (std::size_t i = 0; i < tr.tx.size(); ++i) {
        cross += tr.clean[i] * std::conj(tr.tx[i]);
        ref += std::norm(tr.tx[i]);
      }
    }
    const Complex gain = cross / ref;
    double err = 0.0;
    std::uint64_t errors = 0, bits = 0;
    for (const Trial& tr : trials) {
      std::vector<Complex> eq(tr.noisy.size());
      for (std::size_t i = 0; i < tr.tx.size(); ++i) {
        err += std::norm(tr.clean[i] - gain * tr.tx[i]);
        eq[i] = tr.noisy[i] / gain;
      }
      errors += bit_errors(tr.bits, demap_symbols(eq, c));
      bits += tr.bits.size();
    }
    const double signal = std::norm(gain) * ref;
    const double measured = err > 0.0 ? signal / err : INFINITY;
    report.table.add_row({eps, to_db(cfo_sinr(eps, plan)), to_db(measured), std::sqrt(err / signal),
                          ratio(errors, bits), static_cast<std::int64_t>(bits)});
  }
  report.header = {
      {"predicted_sinr", "kernel sum |S(eps)|^2 / sum_{m != k} |S(m-k+eps)|^2, middle active subcarrier k"},
      {"measured_sinr", "noise-free: |g|^2 sum|X|^2 / sum|Y - g X|^2, g = least-squares common gain over all symbols"},
      {"evm", "noise-free, after dividing by g"},
      {"ber", cfg.snr_db ? "after AWGN at snr_db=" + format_double(*cfg.snr_db) + " and division by g"
                         : std::string("noise-free, after division by g")},
      {"symbols", "each symbol transmitted alone, sample index origin 0"},
  };
  finish(report, t0);
  return report;
}

RunReport run_cp_sweep(const ScenarioConfig& cfg, unsigned threads) {
  validate(cfg);
  const auto t0 = Clock::now();
  RunReport report = start_report(cfg);
  const std::size_t tau = cfg.taps ? cfg.taps->size() - 1 : 0;
  report.table.columns = {"cp_len", "max_excess_delay", "evm", "ber", "bit_errors", "bits"};
  const std::vector<double> points = sweep_points(cfg, static_cast<double>(cfg.cp_len));
  for (std::size_t p = 0; p < points.size(); ++p) {
    const auto ng = static_cast<std::size_t>(points[p]);
    const Link link(cfg, ng);
    const Link::Stats st = link.run_point(p, cfg.snr_db, threads);
    report.table.add_row({static_cast<std::int64_t>(ng), static_cast<std::int64_t>(tau),
                          std::sqrt(st.error_power / st.reference_power), ratio(st.bit_errors, st.bits),
                          static_cast<std::int64_t>(st.bit_errors), static_cast<std::int64_t>(st.bits)});
  }
  report.header = {
      {"equalizer", "one tap per subcarrier: Y(k) / H(k), H = unscaled DFT of the zero-padded taps"},
      {"stream", std::to_string(cfg.symbols_per_trial) +
                     " symbols per frame streamed back-to-back through the multipath channel, zero initial state"},
  };
  finish(report, t0);
  return report;
}

RunReport run_experiment(const ScenarioConfig& cfg, unsigned threads) {
  switch (cfg.experiment) {
    case Experiment::kPsd: return run_psd(cfg, threads);
    case Experiment::kPaprCcdf: return run_papr_ccdf(cfg, threads);
    case Experiment::kBerSweep: return run_ber_sweep(cfg, threads);
    case Experiment::kCfoSweep: return run_cfo_sweep(cfg, threads);
    case Experiment::kCpSweep: return run_cp_sweep(cfg, threads);
  }
  throw std::logic_error("run_experiment: unknown experiment");
}

}  // namespace ofdm::harness
