#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

namespace mcpqe {

/**
 * @brief Deterministic random stream with platform-independent output.
 *
 * std::mt19937_64's raw output is pinned by the standard but the
 * distribution adaptors are not, so uniform/normal/binomial draws are
 * implemented here directly.  Streams for concurrent estimators are derived
 * from a master seed with derive(), so results do not depend on evaluation
 * order or thread count.
 */
class RngStream {
 public:
  explicit RngStream(uint64_t seed) : gen_(seed) {}

  uint64_t raw() { return gen_(); }

  /// Uniform double in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller (pair cached).
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * M_PI * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * M_PI * u2);
  }

  /// Index draw from an inclusive cumulative weight table (last entry = total).
  std::size_t discrete_cdf(std::span<const double> cdf) {
    const double u = uniform() * cdf.back();
    std::size_t lo = 0, hi = cdf.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (cdf[mid] <= u) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    return lo;
  }

  /// Exact Binomial(n, p) sample.
  long long binomial(long long n, double p);

  /// splitmix64-style mixing for deriving independent child streams.
  static uint64_t derive(uint64_t master, uint64_t stream_id) {
    uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream_id + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace mcpqe
