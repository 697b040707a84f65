// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace mamimo {

// Seeded random stream with deterministic substream derivation. A stream is
// identified by a 64-bit key mixed from (seed, stream-id); identical keys
// reproduce identical sample sequences, distinct keys give statistically
// independent ones. A stream may be created on one thread and consumed on
// another, but a single stream must not be sampled concurrently.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  // Child stream derived from this stream's identity and `index`. The
  // derivation depends only on the identity, never on how many samples have
  // been drawn, so trial substreams can be handed out in any order.
  [[nodiscard]] RngStream substream(std::uint64_t index) const;

  std::uint64_t next_u64();

  // Unbiased draw in [0, bound) by rejection.
  std::uint64_t next_below(std::uint64_t bound);

  // Uniform strictly inside (0, 1), 53-bit resolution.
  double uniform();

  // Standard normal (Box-Muller).
  double normal();

  // Circularly-symmetric complex Gaussian with total variance `variance`
  // (variance/2 per real and imaginary part).
  std::complex<double> circular_gaussian(double variance);

 private:
  struct FromKey {};
  RngStream(FromKey, std::uint64_t key);

  std::uint64_t key_;
  std::mt19937_64 engine_;
};

}  // namespace mamimo
