#ifndef LIECOMM_RNG_HPP
#define LIECOMM_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

#include "liecomm/linalg.hpp"

namespace liecomm {

/// Seeded generator with explicit distributions. std::normal_distribution
/// and friends are implementation-defined, which would break the CLI's
/// byte-identical-rerun contract; Box-Muller over raw mt19937_64 output is
/// reproducible given the same libm.
class Rng {
public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1) with 53-bit resolution.
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = uniform();
    const double u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

  /// Uniform integer in [0, bound), unbiased via rejection.
  uint64_t integer(uint64_t bound) {
    const uint64_t limit = std::numeric_limits<uint64_t>::max() -
                           std::numeric_limits<uint64_t>::max() % bound;
    uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return x % bound;
  }

  linalg::Vec normal_vec(int d) {
    linalg::Vec v(d);
    for (int i = 0; i < d; ++i) v[i] = normal();
    return v;
  }

private:
  std::mt19937_64 gen_;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace liecomm

#endif
