#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace orient {

// splitmix64 finalizer, used to spread (seed, stream) pairs over the full
// 64-bit state space before handing them to the mt19937_64 engine.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent generator for a (seed, stream) pair. Streams let one run seed
/// drive several decoupled noise sources (measurement noise, outlier draws).
inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(stream + 1)));
}

/// Box-Muller standard normal sampler. Hand-rolled so the byte stream does
/// not depend on the standard library's normal_distribution implementation.
class GaussianSampler {
 public:
  explicit GaussianSampler(std::mt19937_64& rng) : rng_(rng) {}

  double operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // u1 in (0,1], u2 in [0,1)
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  double uniform01() {
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  }

  std::mt19937_64& rng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace orient
