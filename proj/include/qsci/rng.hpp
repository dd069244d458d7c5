// Copyright 2026 The qsci-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cassert>
#include <cstdint>
#include <random>

namespace qsci {

/// splitmix64 finalizer; the seed-derivation hash used across the project.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seeded generator with platform-independent output.
///
/// mt19937_64 raw output is fully specified by the standard; the bounded and
/// floating-point draws below avoid std distributions, whose sequences vary
/// between library implementations. Derived streams follow one documented
/// rule so parallel schedules cannot change results:
///   stream(seed, k) = Rng(splitmix64(seed ^ splitmix64(k + 1)))
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) noexcept {
    return splitmix64(seed ^ splitmix64(index + 1));
  }
  static Rng stream(std::uint64_t seed, std::uint64_t index) {
    return Rng(derive(seed, index));
  }

  std::uint64_t next() { return gen_(); }

  /// Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in [0, n); unbiased by rejection of the short tail.
  std::uint64_t below(std::uint64_t n) {
    assert(n > 0);
    std::uint64_t x, r;
    do {
      x = next();
      r = x % n;
    } while (x - r > std::uint64_t(0) - n);
    return r;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace qsci
