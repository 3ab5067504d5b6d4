#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mcpqe {

struct ReblockLevel {
  int level = 0;
  long long block_size = 1;
  long long n_blocks = 0;
  double mean = 0.0;
  double std_error = 0.0;
  double error_on_error = 0.0;
};

struct ReblockResult {
  std::vector<ReblockLevel> levels;
  long long n_used = 0;       ///< samples kept after discard + truncation
  int chosen_level = 0;
  bool plateau_found = false;
  double mean = 0.0;
  double std_error = 0.0;     ///< at the chosen level
  double error_on_error = 0.0;
};

/**
 * @brief Blocking analysis of a correlated series.
 *
 * Discards the leading discard_fraction, truncates to the largest
 * power-of-two tail (so the mean is identical at every level), then halves
 * the series by pair averaging. Block standard error uses the population
 * variance over n_blocks with an n_blocks - 1 divisor; its own uncertainty
 * is std_error / sqrt(2 (n_blocks - 1)). The chosen level is the first whose
 * error changes by less than its own uncertainty at the next level; when no
 * plateau appears the largest-error level with at least two blocks is used.
 */
ReblockResult reblock(std::span<const double> series,
                      double discard_fraction = 0.25);

/// sqrt((1 + rho) / (1 - rho)): error inflation of an AR(1) process.
double ar1_inflation(double rho);

/// Survival function of the chi-squared distribution, Q(dof/2, x/2).
double chi_squared_survival(double x, int dof);

/**
 * @brief KL divergence sum p ln(p/q) in nats; inputs are normalized copies.
 *        q must be positive wherever p is.
 */
double kl_divergence(std::span<const double> p, std::span<const double> q);

double mean(std::span<const double> v);
double sample_variance(std::span<const double> v);

}  // namespace mcpqe
