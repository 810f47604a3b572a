#pragma once

// Deterministic split-stream random numbers. Each simulation replicate owns
// a stream keyed by (seed, replicate index), so replicates can run in any
// order or concurrently and still reproduce bit-identically.

#include <cmath>
#include <cstdint>

namespace eigenshrink {

struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t s) : state(s) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in (0, 1]; never 0 so logs are safe.
  double uniform01() {
    return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
  }
};

inline std::uint64_t stream_key(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mix(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
  mix.next();
  return mix.next();
}

// Standard normal deviates by the Box-Muller transform.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t key) : gen_(key) {}

  double next() {
    if (have_) {
      have_ = false;
      return cached_;
    }
    const double u1 = gen_.uniform01();
    const double u2 = gen_.uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(t);
    have_ = true;
    return r * std::cos(t);
  }

 private:
  SplitMix64 gen_;
  bool have_ = false;
  double cached_ = 0.0;
};

}  // namespace eigenshrink
