#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ofdm/analysis.hpp"
#include "ofdm/channel.hpp"
#include "ofdm/modem.hpp"
#include "ofdm/rng.hpp"
#include "ofdm/transform.hpp"
#include "support.hpp"

using namespace ofdm;
using testing::max_abs_diff;
using testing::random_complex;

namespace {

std::vector<Complex> random_qpsk(std::size_t n, unsigned seed) {
  return map_bits(testing::random_bits(2 * n, seed), Constellation::get(Scheme::kQpsk));
}

}  // namespace

TEST_CASE("ICI coefficient special values") {
  CHECK(ici_coefficient(0.0, 64) == Complex{1.0, 0.0});
  CHECK(ici_coefficient(64.0, 64) == Complex{1.0, 0.0});
  CHECK(std::abs(ici_coefficient(3.0, 16)) < 1e-12);
  CHECK(std::abs(ici_coefficient_direct(3.0, 16)) < 1e-12);
  CHECK(std::abs(ici_coefficient(0.25, 8) - ici_coefficient_direct(0.25, 8)) < 1e-14);
}

TEST_CASE("ICI coefficient frozen values") {
  // 40-digit direct sums.
  struct Case {
    double d;
    std::size_t n;
    Complex s;
  };
  const Case cases[] = {
      {0.25, 8, {0.69707314922555377888, 0.57207314922555377888}},
      {0.1, 64, {0.93697382474731126697, 0.29936438026144164132}},
      {2.5, 16, {0.0625, 0.11692927573683684257}},
      {-7.3, 64, {0.030066483693174450833, -0.019876997060064563175}},
  };
  for (const Case& c : cases) {
    CAPTURE(c.d);
    CHECK(std::abs(ici_coefficient(c.d, c.n) - c.s) < 1e-14);
  }
}

TEST_CASE("closed form matches direct sum for random distances") {
  std::mt19937 gen(3);
  for (std::size_t n : {4u, 16u, 64u, 256u}) {
    std::uniform_real_distribution<double> u(-static_cast<double>(n) / 2.0, static_cast<double>(n) / 2.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double d = u(gen);
      worst = std::max(worst, std::abs(ici_coefficient(d, n) - ici_coefficient_direct(d, n)));
    }
    CAPTURE(n);
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("kernel energy over one period is one") {
  for (double eps : {0.13, -0.4, 0.01, 0.49}) {
    double e = 0.0;
    for (int d = 0; d < 64; ++d) e += std::norm(ici_coefficient(d + eps, 64));
    CHECK(std::abs(e - 1.0) < 1e-10);
  }
}

TEST_CASE("predicted CFO output matches the time-domain pipeline") {
  for (double eps : {0.05, 0.1, 0.3, -0.2}) {
    const auto X = random_qpsk(64, 7);
    const Spectrum pipeline = fft(apply_cfo(ifft(Spectrum(X)), eps, 64));
    CHECK(max_abs_diff(predict_cfo_output(Spectrum(X), eps).bins, pipeline.bins) < 1e-9);
  }
  const auto X = random_qpsk(64, 8);
  CHECK(predict_cfo_output(Spectrum(X), 0.0).bins == X);

  std::vector<Complex> one(64);
  one[10] = {0.6, -0.8};
  const Spectrum Y = predict_cfo_output(Spectrum(one), 0.17);
  for (std::size_t k = 0; k < 64; ++k) {
    const double d = 10.0 - static_cast<double>(k) + 0.17;
    CHECK(std::abs(std::abs(Y[k]) - std::abs(ici_coefficient(d, 64))) < 1e-12);
  }
}

TEST_CASE("CFO SINR") {
  CHECK(std::isinf(cfo_sinr(0.0, 64)));
  // Frozen from 40-digit kernel sums, middle subcarrier of an all-active N=64 plan.
  CHECK(cfo_sinr(0.02, 64) == doctest::Approx(759.49449614947574864).epsilon(1e-10));
  CHECK(cfo_sinr(0.1, 64) == doctest::Approx(29.806179635608080775).epsilon(1e-10));
  CHECK(cfo_sinr(0.02, 64) > cfo_sinr(0.05, 64));
  CHECK(cfo_sinr(0.05, 64) > cfo_sinr(0.1, 64));
  CHECK(cfo_sinr(0.1, 64) > cfo_sinr(0.2, 64));
  CHECK_THROWS_AS(cfo_sinr(0.5, 64), std::invalid_argument);
  CHECK_THROWS_AS(cfo_sinr(-0.6, 64), std::invalid_argument);
  // Null subcarriers contribute no interference.
  CHECK(cfo_sinr(0.1, SubcarrierPlan(64, true, 11)) > cfo_sinr(0.1, 64));
}

TEST_CASE("PAPR basics") {
  std::vector<Complex> single(64);
  single[5] = 1.0;
  const PaprResult one = papr(ifft(Spectrum(single)));
  CHECK(std::abs(one.papr_linear - 1.0) < 1e-12);
  CHECK(std::abs(one.papr_db) < 1e-10);

  const PaprResult impulse = papr(ifft(Spectrum(std::vector<Complex>(8, 1.0))));
  CHECK(std::abs(impulse.papr_linear - 8.0) < 1e-12);

  const TimeSignal x = ifft(Spectrum(random_qpsk(64, 4)));
  double peak = 0.0, sum = 0.0;
  for (const Complex& v : x.samples) peak = std::max(peak, std::norm(v));
  for (const Complex& v : x.samples) sum += std::norm(v);
  const PaprResult r = papr(x);
  CHECK(r.papr_linear == doctest::Approx(peak / (sum / 64.0)).epsilon(1e-12));
  CHECK(r.papr_linear == doctest::Approx(r.peak_power / r.mean_power).epsilon(1e-12));
  CHECK(r.papr_db == doctest::Approx(10.0 * std::log10(r.papr_linear)).epsilon(1e-12));
  CHECK_THROWS_AS(papr(TimeSignal(std::vector<Complex>(4))), std::invalid_argument);
  CHECK_THROWS_AS(papr(TimeSignal{}), std::invalid_argument);
}

TEST_CASE("clipping") {
  const TimeSignal x = ifft(Spectrum(random_qpsk(128, 5)));
  CHECK(clip(x, 40.0).samples == x.samples);

  const double before = papr(x).mean_power;
  const TimeSignal y = clip(x, 3.0);
  double peak = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    peak = std::max(peak, std::norm(y[i]));
    CHECK(std::norm(y[i]) <= std::norm(x[i]) * (1.0 + 1e-15));
    CHECK(std::abs(std::arg(y[i]) - std::arg(x[i])) < 1e-12);
  }
  CHECK(peak / before <= std::pow(10.0, 0.3) * (1.0 + 1e-12));
}

TEST_CASE("CCDF endpoints, monotonicity and steps") {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  const CcdfCurve c = empirical_ccdf(v, {5.0, -INFINITY, 2.5, INFINITY, 0.0}, "x");
  CHECK(c.thresholds_db == std::vector<double>{-INFINITY, 0.0, 2.5, 5.0, INFINITY});
  CHECK(c.exceed_prob == std::vector<double>{1.0, 1.0, 0.5, 0.0, 0.0});
  CHECK(c.trials == 4);
  CHECK(ccdf_crossing(v, 0.5) == 3.0);
  CHECK_THROWS_AS(ccdf_crossing({}, 0.5), std::invalid_argument);

  PaprCcdfRun run;
  run.plan = SubcarrierPlan::all_active(128);
  run.n_symbols = 1;
  run.seed = 3;
  std::vector<double> th;
  for (double t = 0.0; t <= 13.0; t += 0.25) th.push_back(t);
  const PaprCcdf one = papr_ccdf(run, th);
  for (double p : one.symbol_papr.exceed_prob) CHECK((p == 0.0 || p == 1.0));

  run.n_symbols = 5000;
  const PaprCcdf many = papr_ccdf(run, th);
  for (const CcdfCurve* curve : {&many.symbol_papr, &many.sample_power}) {
    for (std::size_t i = 1; i < curve->exceed_prob.size(); ++i)
      CHECK(curve->exceed_prob[i] <= curve->exceed_prob[i - 1]);
  }
  run.threads = 4;
  CHECK(papr_ccdf(run, th).papr_db == many.papr_db);
}

TEST_CASE("CCDF estimates from disjoint seeds agree") {
  std::vector<double> th;
  for (double t = 5.0; t <= 11.0; t += 0.5) th.push_back(t);
  PaprCcdfRun a;
  a.plan = SubcarrierPlan::all_active(128);
  a.n_symbols = 100000;
  a.seed = 1;
  PaprCcdfRun b = a;
  b.seed = 2;
  const CcdfCurve ca = papr_ccdf(a, th).symbol_papr, cb = papr_ccdf(b, th).symbol_papr;
  for (std::size_t i = 0; i < th.size(); ++i) {
    const double p = 0.5 * (ca.exceed_prob[i] + cb.exceed_prob[i]);
    const double se = std::sqrt(2.0 * p * (1.0 - p) / 1e5);
    CAPTURE(th[i]);
    CHECK(std::abs(ca.exceed_prob[i] - cb.exceed_prob[i]) <= 3.0 * se + 1e-12);
  }
}

TEST_CASE("clipping at 6 dB lowers the 1e-2 PAPR threshold") {
  PaprCcdfRun run;
  run.plan = SubcarrierPlan::all_active(128);
  run.n_symbols = 10000;
  run.seed = 11;
  const double plain = ccdf_crossing(papr_ccdf(run, {0.0}).papr_db, 1e-2);
  run.clip_ratio_db = 6.0;
  const double clipped = ccdf_crossing(papr_ccdf(run, {0.0}).papr_db, 1e-2);
  MESSAGE("1e-2 threshold unclipped " << plain << " dB, clipped " << clipped << " dB");
  CHECK(clipped < plain);
}

TEST_CASE("time samples are near Gaussian") {
  const TimeSampleMoments m = time_sample_moments(Scheme::kQpsk, SubcarrierPlan::all_active(128), 100000, 5);
  for (const SampleMoments* s : {&m.real, &m.imag}) {
    CHECK(std::abs(s->skewness) < 0.02);
    CHECK(std::abs(s->excess_kurtosis) < 0.05);
  }
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  const SampleMoments s = moments(v);
  CHECK(s.mean == 2.5);
  CHECK(s.variance == doctest::Approx(1.25));
  CHECK(std::abs(s.skewness) < 1e-15);
  CHECK(s.excess_kurtosis == doctest::Approx(-1.36));
}

TEST_CASE("PSD of a tone peaks at the tone") {
  const double f0 = 5.0 / 64.0;
  std::vector<Complex> x(4096);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::polar(1.0, 2.0 * kPi * f0 * static_cast<double>(i));
  const PsdEstimate est = estimate_psd(TimeSignal(x), PsdParams::defaults_for(64));
  const auto peak = std::max_element(est.power_db.begin(), est.power_db.end()) - est.power_db.begin();
  CHECK(est.freq_bins[static_cast<std::size_t>(peak)] == doctest::Approx(f0));
  CHECK(est.freq_bins.size() == est.power_db.size());
  CHECK(std::is_sorted(est.freq_bins.begin(), est.freq_bins.end()));
  CHECK(est.segments == (4096 - 256) / 128 + 1);
  for (double p : est.power_db) CHECK(std::isfinite(p));
  CHECK_THROWS_AS(estimate_psd(TimeSignal(std::vector<Complex>(100, 1.0)), PsdParams::defaults_for(64)),
                  std::invalid_argument);
}

TEST_CASE("PSD of an all-active stream is flat in band") {
  const SubcarrierPlan plan = SubcarrierPlan::all_active(64);
  const auto& qpsk = Constellation::get(Scheme::kQpsk);
  RngStream rng(2, 0);
  std::vector<TimeSignal> syms;
  for (int s = 0; s < 1000; ++s) syms.push_back(ifft(allocate(map_bits(rng.bits(128), qpsk), plan)));
  std::vector<double> band;
  for (std::size_t k : plan.active_indices()) band.push_back(plan.bin_frequency(k));
  const PsdEstimate est = estimate_psd(serialize_symbols(syms, 64), PsdParams::defaults_for(64), band);
  double lo = INFINITY, hi = -INFINITY;
  for (double f : band) {
    lo = std::min(lo, est.at(f));
    hi = std::max(hi, est.at(f));
  }
  CHECK(hi - lo < 3.0);
}

TEST_CASE("windows") {
  const auto hann = make_window(WindowKind::kHann, 8);
  CHECK(hann[0] == 0.0);
  CHECK(hann[4] == doctest::Approx(1.0));
  const auto rect = make_window(WindowKind::kRectangular, 8);
  CHECK(std::all_of(rect.begin(), rect.end(), [](double w) { return w == 1.0; }));
  CHECK(parse_window("hamming") == WindowKind::kHamming);
  CHECK_FALSE(parse_window("kaiser").has_value());
}

TEST_CASE("BER and EVM") {
  const Bits a = testing::random_bits(1000, 1);
  CHECK(ber(a, a) == 0.0);
  Bits inv = a;
  for (auto& b : inv) b ^= 1u;
  CHECK(ber(a, inv) == 1.0);
  Bits five = a;
  for (std::size_t i : {3u, 100u, 500u, 501u, 999u}) five[i] ^= 1u;
  CHECK(ber(a, five) == 0.005);
  CHECK(bit_errors(a, five) == 5);
  CHECK_THROWS_AS(ber(a, Bits(999)), std::invalid_argument);

  const auto s = random_qpsk(50, 2);
  CHECK(evm(s, s) == 0.0);
  std::vector<Complex> scaled(s);
  for (auto& v : scaled) v *= 1.1;
  CHECK(evm(scaled, s) == doctest::Approx(0.1));
  CHECK_THROWS_AS(evm(s, std::vector<Complex>(3)), std::invalid_argument);
  CHECK(q_function(0.0) == 0.5);
}
