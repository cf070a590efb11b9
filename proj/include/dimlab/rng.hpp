#pragma once

#include <cmath>
#include <cstdint>

#include "dimlab/errors.hpp"
#include "dimlab/geometry.hpp"

namespace dimlab {

// splitmix64 finalizer: bijective 64-bit mix.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Counter-based generator: output i is a pure function of (seed, replica,
// stream, i), so parallel replicas produce identical draws regardless of
// worker count or scheduling.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t replica = 0, std::uint64_t stream = 0)
      : key_(mix64(mix64(seed ^ 0x8AD6C9F0A1B2C3D4ULL) ^
                   mix64(replica * 0xA24BAED4963EE407ULL + 1) ^
                   mix64(stream * 0x9FB21C651E98DF25ULL + 2))) {}

  std::uint64_t next_u64() { return mix64(key_ + (counter_++) * 0x9E3779B97F4A7C15ULL); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double exponential(double rate) {
    if (!(rate > 0.0)) throw DomainError("exponential: rate must be > 0");
    return -std::log1p(-uniform01()) / rate;
  }

  // Knuth product method; means above 500 are split by Poisson additivity.
  long poisson(double mean) {
    if (mean < 0.0) throw DomainError("poisson: mean must be >= 0");
    if (mean == 0.0) return 0;
    long n = 0;
    while (mean > 500.0) {
      n += poisson(mean / 2.0);
      mean /= 2.0;
    }
    const double limit = std::exp(-mean);
    double prod = uniform01();
    while (prod > limit) {
      prod *= uniform01();
      ++n;
    }
    return n;
  }

  Point uniform_point(const Window& w) {
    std::array<double, Point::kMaxDim> c{};
    for (std::size_t i = 0; i < w.dim(); ++i) c[i] = uniform(w.lower()[i], w.upper()[i]);
    return Point(std::span<const double>(c.data(), w.dim()));
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace dimlab
