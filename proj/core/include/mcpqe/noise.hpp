#pragma once

#include <algorithm>
#include <string>

#include "mcpqe/rng.hpp"

namespace mcpqe {

enum class NoiseMode { kExact, kShots, kGaussian };

NoiseMode parse_noise_mode(const std::string& name);

/**
 * @brief Measurement-noise channel applied to exact expectation values.
 *
 * kShots replaces an expectation <O> of a +/-1-valued observable by
 * (2k/N - 1) with k ~ Binomial(N, (1+<O>)/2); kGaussian adds N(0, sigma).
 */
struct NoiseModel {
  NoiseMode mode = NoiseMode::kExact;
  long long n_shots = 1000;            ///< per measured string
  long long n_shots_reference = 1000;  ///< for the reference overlap s_0
  double sigma = 0.0;

  double apply(double exact, long long shots, RngStream& rng) const {
    switch (mode) {
      case NoiseMode::kExact:
        return exact;
      case NoiseMode::kGaussian:
        return exact + sigma * rng.normal();
      case NoiseMode::kShots: {
        const double p = std::clamp(0.5 * (1.0 + exact), 0.0, 1.0);
        const long long k = rng.binomial(shots, p);
        return 2.0 * static_cast<double>(k) / static_cast<double>(shots) - 1.0;
      }
    }
    return exact;
  }

  bool is_exact() const { return mode == NoiseMode::kExact; }
};

}  // namespace mcpqe
