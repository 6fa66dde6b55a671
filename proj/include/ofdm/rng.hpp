#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "ofdm/types.hpp"

namespace ofdm {

/// Deterministic random stream keyed by (seed, stream_id).
///
/// Engine: std::mt19937_64 seeded through std::seed_seq with the four 32-bit
/// halves {seed_lo, seed_hi, stream_lo, stream_hi}. Both are fully specified
/// by the C++ standard, so the raw 64-bit sequence is identical on every
/// conforming platform.
///
/// Uniforms use the top 53 bits: u = (x >> 11) * 2^-53, in [0, 1).
/// Normals use the Marsaglia polar method on 2u-1 pairs; each accepted pair
/// yields two independent N(0,1) variates. This method is fixed; changing it
/// changes every seeded experiment.
///
/// Single owner. Parallel trials construct their own stream from a disjoint
/// stream_id instead of sharing one.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }
  double uniform();
  std::pair<double, double> gaussian_pair();
  /// One N(0,1) variate; consumes pairs and caches the second half.
  double gaussian();
  /// n independent fair bits.
  Bits bits(std::size_t n);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

inline std::pair<double, double> gaussian_pair(RngStream& stream) {
  return stream.gaussian_pair();
}

/// Stream-id layout for Monte-Carlo runs: trial index in the high bits,
/// the consumer (data bits, AWGN, phase noise, ...) in the low 4.
enum class StreamPurpose : std::uint64_t {
  kData = 0,
  kAwgn = 1,
  kPhaseNoise = 2,
  kChannel = 3,
};

inline std::uint64_t derive_stream_id(std::uint64_t trial, StreamPurpose purpose) {
  return (trial << 4) | static_cast<std::uint64_t>(purpose);
}

}  // namespace ofdm
