#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace rkframe::detail {

// splitmix64. Tiny, fully specified, stable across platforms and standard
// library versions, which keeps seeded runs byte-reproducible.
struct rng {
  std::uint64_t state;

  explicit rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // [0,1)
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller, one value per call (two uniforms consumed, no cached state).
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  std::complex<double> normal_complex() {
    double re = normal();
    double im = normal();
    return {re, im};
  }
};

// Derives an independent stream for (seed, stream index); used so restart k
// and trial t depend only on (seed, k), so nested sets stay nested as counts
// grow.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  rng g(seed ^ (0xd1b54a32d192ed03ull * (stream + 1)));
  return g.next();
}

}  // namespace rkframe::detail
