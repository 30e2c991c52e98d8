#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace riscap {

/// Seeded random source. All distributions are implemented on top of the
/// raw 64-bit stream so that a given seed produces the same values on every
/// platform; this is what makes datasets and trained models reproducible
/// byte for byte.
///
/// Parallel generation splits seeds as `seed_i = base_seed + i`, one stream
/// per realization or sample.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform double in [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller. Two uniforms are consumed per call.
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi() * u2);
  }

  /// Circularly symmetric complex Gaussian with E|z|^2 = variance.
  std::complex<double> cnormal(double variance) {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-variance * std::log(u1));
    return {r * std::cos(two_pi() * u2), r * std::sin(two_pi() * u2)};
  }

  /// Unbiased uniform integer in [0, n). n must be > 0.
  std::size_t below(std::size_t n) {
    const std::uint64_t bound = n;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r;
    do {
      r = gen_();
    } while (r >= limit);
    return static_cast<std::size_t>(r % bound);
  }

  /// Fisher-Yates shuffle with a fixed visitation order.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

  static constexpr double two_pi() { return 6.283185307179586476925286766559; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace riscap
