// rapd - randomized-activation primal-dual splitting
// Copyright 2026 rapd Contributors
// Licensed under Apache 2.0

#ifndef RAPD_RNG_HPP_
#define RAPD_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace rapd {

/// Counter-based pseudorandom generator (SplitMix64 output function over an
/// additive counter). Identical seeds give identical streams, and independent
/// streams for parallel runs are derived by mixing (seed, stream ids).
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : state_(seed) {}

  /// 64-bit avalanche mix (Murmur3 finalizer).
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 33;
    z *= 0xff51afd7ed558ccdULL;
    z ^= z >> 33;
    z *= 0xc4ceb9fe1a85ec53ULL;
    z ^= z >> 33;
    return z;
  }

  static std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream_a,
                                   std::uint64_t stream_b = 0) {
    return mix(mix(master ^ 0x9e3779b97f4a7c15ULL * (stream_a + 1)) ^
               0xbf58476d1ce4e5b9ULL * (stream_b + 1));
  }

  static SeededRng derive(std::uint64_t master, std::uint64_t stream_a,
                          std::uint64_t stream_b = 0) {
    return SeededRng(derive_seed(master, stream_a, stream_b));
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform in (0, 1]; never returns 0 (safe under log).
  double uniform_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Unbiased uniform integer in {0, ..., n-1}.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("SeededRng::below: n == 0");
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  bool bernoulli(double p) { return uniform() < p; }

  /// Standard normal via Box-Muller (one variate per uniform pair).
  double normal() {
    const double u1 = uniform_pos();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t state_;
};

/// Gamma(shape, 1) by Marsaglia-Tsang rejection; shapes < 1 use the boost
/// gamma(a) = gamma(a+1) * U^{1/a}.
inline double sample_gamma(double shape, SeededRng& rng) {
  if (!(shape > 0.0)) throw std::invalid_argument("sample_gamma: shape > 0");
  if (shape < 1.0) {
    const double u = rng.uniform_pos();
    return sample_gamma(shape + 1.0, rng) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform_pos();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

/// Beta(a, b) from two Gamma variates.
inline double sample_beta(double a, double b, SeededRng& rng) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("sample_beta: shapes must be positive");
  }
  const double x = sample_gamma(a, rng);
  const double y = sample_gamma(b, rng);
  return x / (x + y);
}

}  // namespace rapd

#endif  // RAPD_RNG_HPP_
