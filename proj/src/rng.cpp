// SPDX-License-Identifier: Apache-2.0
#include "mamimo/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mamimo {
namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer, full 64-bit avalanche.
std::uint64_t mix64(std::uint64_t x) {
  x += kGamma;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_key(std::uint64_t parent, std::uint64_t index) {
  return mix64(mix64(parent) ^ (kGamma * (index + 1)));
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : RngStream(FromKey{}, derive_key(mix64(seed), stream_id)) {}

RngStream::RngStream(FromKey, std::uint64_t key) : key_(key), engine_(key) {}

RngStream RngStream::substream(std::uint64_t index) const {
  return RngStream(FromKey{}, derive_key(key_, index));
}

std::uint64_t RngStream::next_u64() { return engine_(); }

std::uint64_t RngStream::next_below(std::uint64_t bound) {
  if (bound == 0) {
    throw std::invalid_argument("RngStream::next_below: bound must be positive");
  }
  const std::uint64_t reject_below = (-bound) % bound;  // 2^64 mod bound
  std::uint64_t x = next_u64();
  while (x < reject_below) {
    x = next_u64();
  }
  return x % bound;
}

double RngStream::uniform() {
  // (k + 0.5) / 2^53 with k in [0, 2^53): never exactly 0 or 1.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() {
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::complex<double> RngStream::circular_gaussian(double variance) {
  if (!(variance > 0.0) || !std::isfinite(variance)) {
    throw std::invalid_argument(
        "RngStream::circular_gaussian: variance must be positive and finite");
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-variance * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

}  // namespace mamimo
