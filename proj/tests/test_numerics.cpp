#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <stdexcept>

#include "ofdm/rng.hpp"
#include "ofdm/transform.hpp"
#include "support.hpp"

using namespace ofdm;
using testing::direct_dft;
using testing::direct_idft;
using testing::max_abs_diff;
using testing::random_complex;

TEST_CASE("dft of an impulse is flat at 1/N") {
  const Spectrum F = dft(TimeSignal({1.0, 0.0, 0.0, 0.0}));
  for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(F[k] - Complex{0.25, 0.0}) < 1e-15);
}

TEST_CASE("dft of a constant is DC only") {
  const Complex c{0.7, -1.3};
  const Spectrum F = dft(TimeSignal({c, c, c, c}));
  CHECK(std::abs(F[0] - c) < 1e-15);
  for (std::size_t k = 1; k < 4; ++k) CHECK(std::abs(F[k]) < 1e-15);
}

TEST_CASE("dft matches long-double direct summation") {
  const auto f = random_complex(8, 11);
  CHECK(max_abs_diff(dft(TimeSignal(f)).bins, direct_dft(f)) < 1e-12);
}

TEST_CASE("idft has no scale factor") {
  const TimeSignal f = idft(Spectrum({1.0, 0.0, 0.0, 0.0}));
  for (std::size_t n = 0; n < 4; ++n) CHECK(std::abs(f[n] - Complex{1.0, 0.0}) < 1e-15);

  const TimeSignal g = idft(Spectrum(std::vector<Complex>(8, 1.0)));
  CHECK(std::abs(g[0] - Complex{8.0, 0.0}) < 1e-13);
  for (std::size_t n = 1; n < 8; ++n) CHECK(std::abs(g[n]) < 1e-13);
}

TEST_CASE("empty input is rejected") {
  CHECK_THROWS_AS(dft(TimeSignal{}), std::invalid_argument);
  CHECK_THROWS_AS(idft(Spectrum{}), std::invalid_argument);
  CHECK_THROWS_AS(fft(TimeSignal{}), std::invalid_argument);
  CHECK_THROWS_AS(ifft(Spectrum{}), std::invalid_argument);
}

TEST_CASE("round trip, linearity and Parseval") {
  for (std::size_t n : {1u, 2u, 3u, 16u, 12u, 64u, 100u, 4096u}) {
    CAPTURE(n);
    const auto f = random_complex(n, 100 + static_cast<unsigned>(n));
    const auto g = random_complex(n, 200 + static_cast<unsigned>(n));
    const Spectrum F = fft(TimeSignal(f));
    CHECK(max_abs_diff(ifft(F).samples, f) < 1e-12);

    const Complex a{0.3, -2.0}, b{-1.1, 0.4};
    std::vector<Complex> mix(n);
    for (std::size_t i = 0; i < n; ++i) mix[i] = a * f[i] + b * g[i];
    const Spectrum G = fft(TimeSignal(g));
    std::vector<Complex> expect(n);
    for (std::size_t k = 0; k < n; ++k) expect[k] = a * F[k] + b * G[k];
    CHECK(max_abs_diff(fft(TimeSignal(mix)).bins, expect) < 1e-12);

    double time_energy = 0.0, freq_energy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      time_energy += std::norm(f[i]);
      freq_energy += std::norm(F[i]);
    }
    CHECK(std::abs(time_energy - static_cast<double>(n) * freq_energy) <= 1e-9 * time_energy);
  }
}

TEST_CASE("fft agrees with direct summation on power-of-two sizes") {
  for (std::size_t n = 1; n <= 1024; n *= 2) {
    CAPTURE(n);
    const auto f = random_complex(n, static_cast<unsigned>(n));
    const double scale = testing::l2(f);
    CHECK(max_abs_diff(fft(TimeSignal(f)).bins, direct_dft(f)) <= 1e-10 * scale);
    CHECK(max_abs_diff(ifft(Spectrum(f)).samples, direct_idft(f)) <= 1e-10 * scale);
  }
}

TEST_CASE("size 1 and size 12") {
  const Complex v{2.5, -0.5};
  CHECK(fft(TimeSignal({v}))[0] == v);
  CHECK(ifft(Spectrum({v}))[0] == v);
  const auto f = random_complex(12, 5);
  CHECK_FALSE(is_power_of_two(12));
  CHECK(max_abs_diff(fft(TimeSignal(f)).bins, direct_dft(f)) < 1e-12);
}

TEST_CASE("FftPlan in-place buffers match the free functions") {
  const FftPlan plan(256);
  auto buf = random_complex(256, 9);
  const auto original = buf;
  plan.forward(buf);
  CHECK(max_abs_diff(buf, fft(TimeSignal(original)).bins) == 0.0);
  plan.inverse(buf);
  CHECK(max_abs_diff(buf, original) < 1e-12);
  std::vector<Complex> wrong(128);
  CHECK_THROWS_AS(plan.forward(wrong), std::invalid_argument);
}

TEST_CASE("gaussian_pair moments over 1e6 draws") {
  RngStream s(1, 0);
  double sum = 0.0, sq = 0.0;
  const int pairs = 500000;
  for (int i = 0; i < pairs; ++i) {
    const auto [a, b] = gaussian_pair(s);
    sum += a + b;
    sq += a * a + b * b;
  }
  const double n = 2.0 * pairs;
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  CHECK(std::abs(mean) <= 0.005);
  CHECK(var >= 0.99);
  CHECK(var <= 1.01);
}

TEST_CASE("streams are reproducible and distinct") {
  RngStream a(1, 0), b(1, 0), c(1, 1);
  const auto first = gaussian_pair(a);
  CHECK(first == gaussian_pair(b));

  RngStream d(1, 0);
  int same = 0;
  for (int i = 0; i < 16; ++i) same += d.gaussian() == c.gaussian();
  CHECK(same == 0);

  RngStream x(42, 7), y(42, 7);
  for (int i = 0; i < 1000; ++i) REQUIRE(x.next_u64() == y.next_u64());
}

TEST_CASE("first draws are frozen") {
  // Guards the documented generator against silent changes.
  RngStream f(1, 0);
  CHECK(f.next_u64() == 7712288819789024404ull);
  CHECK(f.gaussian() == -0.45648371645393859);

  RngStream s(1, 0);
  std::seed_seq seq{1u, 0u, 0u, 0u};
  std::mt19937_64 ref(seq);
  CHECK(s.next_u64() == ref());
  const double u = s.uniform();
  CHECK(u == static_cast<double>(ref() >> 11) * 0x1.0p-53);
}

TEST_CASE("uniform range and bits") {
  RngStream s(3, 4);
  for (int i = 0; i < 10000; ++i) {
    const double u = s.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
  const Bits b = s.bits(100000);
  std::size_t ones = 0;
  for (auto v : b) {
    REQUIRE(v <= 1);
    ones += v;
  }
  CHECK(std::abs(static_cast<double>(ones) / 1e5 - 0.5) < 0.01);
}

TEST_CASE("stream ids derived per trial and purpose never collide") {
  std::set<std::uint64_t> ids;
  for (std::uint64_t t = 0; t < 1000; ++t)
    for (auto p : {StreamPurpose::kData, StreamPurpose::kAwgn, StreamPurpose::kPhaseNoise, StreamPurpose::kChannel})
      ids.insert(derive_stream_id(t, p));
  CHECK(ids.size() == 4000);
}
