#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ofdm/analysis.hpp"
#include "ofdm/parallel.hpp"
#include "ofdm/rng.hpp"
#include "ofdm/simd/kernels.hpp"
#include "ofdm/transform.hpp"

namespace ofdm {
namespace {

constexpr std::size_t kChunk = 1024;  // symbols per work item; fixed for determinism

std::size_t chunk_count(std::size_t n) { return (n + kChunk - 1) / kChunk; }

// Random time-domain symbol i of a run.
TimeSignal random_symbol(const Constellation& c, const SubcarrierPlan& plan, const FftPlan& fft,
                         std::uint64_t seed, std::uint64_t index) {
  RngStream stream(seed, derive_stream_id(index, StreamPurpose::kData));
  const Bits bits = stream.bits(plan.active_count() * c.bits_per_symbol());
  return fft.inverse(allocate(map_bits(bits, c), plan));
}

}  // namespace

PaprResult papr(const TimeSignal& x) {
  if (x.empty()) throw std::invalid_argument("papr: empty input");
  const simd::PowerStats st = simd::power_stats(x.view());
  const double mean = st.sum / static_cast<double>(x.size());
  if (!(mean > 0.0)) throw std::invalid_argument("papr: input has zero power");
  PaprResult r;
  r.peak_power = st.peak;
  r.mean_power = mean;
  r.papr_linear = std::max(1.0, st.peak / mean);
  r.papr_db = 10.0 * std::log10(r.papr_linear);
  return r;
}

TimeSignal clip(const TimeSignal& x, double clip_ratio_db) {
  if (x.empty()) return x;
  const double mean = simd::power_stats(x.view()).sum / static_cast<double>(x.size());
  TimeSignal y = x;
  if (!(mean > 0.0)) return y;
  const double limit = std::sqrt(mean * std::pow(10.0, clip_ratio_db / 10.0));
  simd::clip_magnitude(y.samples, limit);
  return y;
}

CcdfCurve empirical_ccdf(std::span<const double> values_db, std::vector<double> thresholds_db,
                         std::string label) {
  std::sort(thresholds_db.begin(), thresholds_db.end());
  std::vector<double> sorted(values_db.begin(), values_db.end());
  std::sort(sorted.begin(), sorted.end());
  CcdfCurve c;
  c.label = std::move(label);
  c.trials = sorted.size();
  c.thresholds_db = std::move(thresholds_db);
  c.exceed_prob.reserve(c.thresholds_db.size());
  for (double t : c.thresholds_db) {
    const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), t);
    c.exceed_prob.push_back(sorted.empty() ? 0.0
                                           : static_cast<double>(above) / static_cast<double>(sorted.size()));
  }
  return c;
}

double ccdf_crossing(std::span<const double> values_db, double prob) {
  if (values_db.empty()) throw std::invalid_argument("ccdf_crossing: no values");
  if (!(prob > 0.0 && prob < 1.0)) throw std::invalid_argument("ccdf_crossing: prob must be in (0, 1)");
  std::vector<double> sorted(values_db.begin(), values_db.end());
  std::sort(sorted.begin(), sorted.end());
  const auto idx = static_cast<std::size_t>(std::floor((1.0 - prob) * static_cast<double>(sorted.size())));
  return sorted[std::min(idx, sorted.size() - 1)];
}

PaprCcdf papr_ccdf(const PaprCcdfRun& run, std::vector<double> thresholds_db) {
  if (run.n_symbols == 0) throw std::invalid_argument("papr_ccdf: n_symbols must be >= 1");
  std::sort(thresholds_db.begin(), thresholds_db.end());
  const Constellation& c = Constellation::get(run.scheme);
  const FftPlan fft(run.plan.n_fft());
  const std::size_t n = run.plan.n_fft();

  PaprCcdf out;
  out.papr_db.resize(run.n_symbols);
  const std::size_t chunks = chunk_count(run.n_symbols);
  std::vector<std::vector<std::uint64_t>> sample_counts(chunks,
                                                        std::vector<std::uint64_t>(thresholds_db.size()));

  parallel_for(chunks, run.threads, [&](std::size_t chunk) {
    std::vector<double> ratio_db(n);
    auto& counts = sample_counts[chunk];
    const std::size_t end = std::min(run.n_symbols, (chunk + 1) * kChunk);
    for (std::size_t i = chunk * kChunk; i < end; ++i) {
      TimeSignal x = random_symbol(c, run.plan, fft, run.seed, run.first_trial + i);
      if (run.clip_ratio_db) x = clip(x, *run.clip_ratio_db);
      const PaprResult r = papr(x);
      out.papr_db[i] = r.papr_db;
      for (std::size_t s = 0; s < n; ++s) {
        ratio_db[s] = 10.0 * std::log10(std::norm(x[s]) / r.mean_power);
      }
      std::sort(ratio_db.begin(), ratio_db.end());
      for (std::size_t t = 0; t < thresholds_db.size(); ++t) {
        counts[t] += static_cast<std::uint64_t>(
            ratio_db.end() - std::upper_bound(ratio_db.begin(), ratio_db.end(), thresholds_db[t]));
      }
    }
  });

  out.symbol_papr = empirical_ccdf(out.papr_db, thresholds_db, "symbol_papr");
  out.sample_power.label = "sample_power";
  out.sample_power.thresholds_db = thresholds_db;
  out.sample_power.trials = static_cast<std::uint64_t>(run.n_symbols) * n;
  for (std::size_t t = 0; t < thresholds_db.size(); ++t) {
    std::uint64_t total = 0;
    for (const auto& counts : sample_counts) total += counts[t];
    out.sample_power.exceed_prob.push_back(static_cast<double>(total) /
                                           static_cast<double>(out.sample_power.trials));
  }
  return out;
}

namespace {

struct RawMoments {
  long double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
  std::uint64_t count = 0;

  void add(double v) {
    const long double x = v, x2 = x * x;
    s1 += x;
    s2 += x2;
    s3 += x2 * x;
    s4 += x2 * x2;
    ++count;
  }
  void merge(const RawMoments& o) {
    s1 += o.s1;
    s2 += o.s2;
    s3 += o.s3;
    s4 += o.s4;
    count += o.count;
  }
  SampleMoments finish() const {
    SampleMoments m;
    m.count = count;
    if (count == 0) return m;
    const long double n = static_cast<long double>(count);
    const long double mu = s1 / n;
    const long double e2 = s2 / n, e3 = s3 / n, e4 = s4 / n;
    const long double var = e2 - mu * mu;
    const long double c3 = e3 - 3 * mu * e2 + 2 * mu * mu * mu;
    const long double c4 = e4 - 4 * mu * e3 + 6 * mu * mu * e2 - 3 * mu * mu * mu * mu;
    m.mean = static_cast<double>(mu);
    m.variance = static_cast<double>(var);
    if (var > 0) {
      m.skewness = static_cast<double>(c3 / std::pow(var, 1.5L));
      m.excess_kurtosis = static_cast<double>(c4 / (var * var) - 3);
    }
    return m;
  }
};

}  // namespace

SampleMoments moments(std::span<const double> values) {
  RawMoments raw;
  for (double v : values) raw.add(v);
  return raw.finish();
}

TimeSampleMoments time_sample_moments(Scheme scheme, const SubcarrierPlan& plan,
                                      std::size_t n_symbols, std::uint64_t seed, unsigned threads) {
  const Constellation& c = Constellation::get(scheme);
  const FftPlan fft(plan.n_fft());
  const std::size_t chunks = chunk_count(n_symbols);
  std::vector<RawMoments> re(chunks), im(chunks);
  parallel_for(chunks, threads, [&](std::size_t chunk) {
    const std::size_t end = std::min(n_symbols, (chunk + 1) * kChunk);
    for (std::size_t i = chunk * kChunk; i < end; ++i) {
      const TimeSignal x = random_symbol(c, plan, fft, seed, i);
      for (const Complex& v : x.samples) {
        re[chunk].add(v.real());
        im[chunk].add(v.imag());
      }
    }
  });
  RawMoments total_re, total_im;
  for (std::size_t i = 0; i < chunks; ++i) {
    total_re.merge(re[i]);
    total_im.merge(im[i]);
  }
  return {total_re.finish(), total_im.finish()};
}

}  // namespace ofdm
