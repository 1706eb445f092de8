#pragma once

#include "pdsplit/types.hpp"

#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace pdsplit {

/// Deterministic random source. Distribution transforms are implemented by
/// hand (53-bit uniforms, Box-Muller normals, partial Fisher-Yates) so that
/// streams are identical across platforms and standard library versions for
/// a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Standard normal via Box-Muller; the second value of each pair is cached.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * M_PI * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

  Vec gaussian_vec(int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = gaussian();
    return v;
  }

  Vec uniform_vec(int n, double a, double b) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = uniform(a, b);
    return v;
  }

  /// Integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Rejection sampling; unbiased and stream-stable.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  /// k distinct indices from {0,...,n-1}, partial Fisher-Yates order.
  std::vector<int> sample_without_replacement(int n, int k) {
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<int> out(k);
    for (int i = 0; i < k; ++i) {
      const int j = i + static_cast<int>(below(static_cast<std::uint64_t>(n - i)));
      std::swap(pool[i], pool[j]);
      out[i] = pool[i];
    }
    return out;
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace pdsplit
