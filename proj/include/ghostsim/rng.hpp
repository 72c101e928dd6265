// Copyright 2026 The ghostsim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GHOSTSIM_RNG_HPP_
#define GHOSTSIM_RNG_HPP_

#include <cstdint>
#include <limits>

namespace ghostsim {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Random stream for one Monte Carlo shot.
///
/// The stream is a pure function of (master seed, shot index): draw k returns
/// mix64(key + k * golden), so any shot can be replayed on any worker without
/// touching the streams of other shots. Satisfies UniformRandomBitGenerator.
class ShotRng {
 public:
  using result_type = std::uint64_t;

  ShotRng(std::uint64_t master_seed, std::uint64_t shot)
      : key_(mix64(mix64(master_seed) ^ mix64(shot ^ 0xd1b54a32d192ed03ULL))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix64(key_ + (counter_++) * 0x9e3779b97f4a7c15ULL); }

  /// Uniform double in [0, 1) built from the top 53 bits; bit-stable across platforms.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  [[nodiscard]] std::uint64_t draws() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace ghostsim

#endif  // GHOSTSIM_RNG_HPP_
