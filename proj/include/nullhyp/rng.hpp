/**
 * @file rng.hpp
 * @brief Deterministic random number generation.
 *
 * One 64-bit seed drives every randomized routine in the library.  The
 * generator is a self-contained splitmix64 stream with explicit Box-Muller
 * sampling, so identical seeds produce bitwise-identical draws on every
 * platform -- a requirement for reproducible verification reports.
 */
#pragma once

#include <cstdint>
#include <vector>

#include "nullhyp/mat2.hpp"

namespace nullhyp {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), state_(seed) {}

  /// splitmix64 step (Steele, Lea, Flood 2014).
  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 bits of precision.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi] inclusive, by rejection (unbiased).
  int uniform_int(int lo, int hi) {
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = (~0ULL / range) * range;
    std::uint64_t v = next_u64();
    while (v >= limit) v = next_u64();
    return lo + static_cast<int>(v % range);
  }

  /// Standard normal via Box-Muller (two uniform draws per sample).
  double normal() {
    const double u1 =
        (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  /// Complex number with independent standard normal parts.
  cx complex_normal() {
    const double re = normal();
    return {re, normal()};
  }

  Vec2 vec2_normal() {
    const cx a = complex_normal();
    return {a, complex_normal()};
  }

  /// Unit-modulus complex number with uniform phase.
  cx unit_phase() {
    const double t = 2.0 * 3.14159265358979323846 * uniform();
    return {std::cos(t), std::sin(t)};
  }

  /// Independent derived stream; children with distinct keys never collide
  /// with the parent stream or with each other in practice.
  Rng child(std::uint64_t key) const {
    std::uint64_t z = seed_ ^ (0x632BE59BD9B4E019ULL * (key + 1));
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return Rng(z ^ (z >> 31));
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace nullhyp
