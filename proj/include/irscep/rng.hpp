#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>

namespace irscep {

using cplx = std::complex<double>;

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Derives an independent stream key by absorbing `parts` into a SplitMix64
/// chain seeded with `seed`. Every (trial, tag, index...) tuple gets its own
/// stream, so adding schemes or growing one dimension never perturbs draws
/// belonging to a different tuple.
inline std::uint64_t derive_stream(std::uint64_t seed,
                                   std::initializer_list<std::uint64_t> parts) {
  std::uint64_t s = seed;
  (void)splitmix64_next(s);
  for (std::uint64_t p : parts) {
    s ^= splitmix64_next(s) + p;
    (void)splitmix64_next(s);
  }
  return splitmix64_next(s);
}

/// Deterministic xoshiro256++ generator with Box-Muller normals. Used instead
/// of <random> distributions so that byte-identical output does not depend on
/// the standard library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64_next(sm);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Unbiased uniform integer in [0, n).
  std::uint32_t next_below(std::uint32_t n) {
    const std::uint64_t rem = (~std::uint64_t{0} % n + 1) % n;
    const std::uint64_t limit = ~std::uint64_t{0} - rem;
    std::uint64_t v = next_u64();
    while (v > limit) v = next_u64();
    return static_cast<std::uint32_t>(v % n);
  }

  /// Standard normal via Box-Muller; generates pairs, caches the spare.
  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = next_double();
    while (u1 <= 0.0) u1 = next_double();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  /// Circularly-symmetric complex normal with unit total variance.
  cplx next_cnormal() {
    const double re = next_normal();
    const double im = next_normal();
    constexpr double inv_sqrt2 = 0.70710678118654752440;
    return {re * inv_sqrt2, im * inv_sqrt2};
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Tags for derive_stream so that each consumer of randomness owns a lane.
enum StreamTag : std::uint64_t {
  kStreamBsUser = 0xB5,
  kStreamBsIrs = 0xB1,
  kStreamIrsUser = 0x1D,
  kStreamSymbols = 0x5E,
  kStreamScheme = 0x5C,
};

}  // namespace irscep
