#pragma once

#include "ofdm/types.hpp"

namespace ofdm {

/// Seam for channel coding and interleaving ahead of the mapper. Only the
/// identity is provided.
class BitCoder {
 public:
  virtual ~BitCoder() = default;
  virtual Bits encode(const Bits& info) const = 0;
  virtual Bits decode(const Bits& coded) const = 0;
  /// Coded bits per information bit.
  virtual double rate() const = 0;
};

class PassThroughCoder final : public BitCoder {
 public:
  Bits encode(const Bits& info) const override { return info; }
  Bits decode(const Bits& coded) const override { return coded; }
  double rate() const override { return 1.0; }
};

}  // namespace ofdm
