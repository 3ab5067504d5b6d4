#include "mcpqe/stats.hpp"

#include <cmath>

#include "mcpqe/errors.hpp"

namespace mcpqe {

namespace {

/// Regularized lower incomplete gamma P(a, x) by series expansion (x < a+1).
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

/// Regularized upper incomplete gamma Q(a, x) by continued fraction (x >= a+1).
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw NumericalError("incomplete gamma domain");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

}  // namespace

double mean(std::span<const double> v) {
  if (v.empty()) throw NumericalError("mean of empty series");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_variance(std::span<const double> v) {
  if (v.size() < 2) throw NumericalError("variance needs two samples");
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

ReblockResult reblock(std::span<const double> series,
                      double discard_fraction) {
  if (discard_fraction < 0.0 || discard_fraction >= 1.0) {
    throw ConfigError("discard fraction must lie in [0, 1)");
  }
  const std::size_t discard =
      static_cast<std::size_t>(discard_fraction * series.size());
  std::size_t remaining = series.size() - discard;
  if (remaining < 2) throw NumericalError("reblock: too few samples");

  // Largest power-of-two tail: every level averages the same samples, so the
  // level means agree exactly.
  std::size_t n = 1;
  while (2 * n <= remaining) n *= 2;
  std::vector<double> data(series.end() - n, series.end());

  ReblockResult result;
  result.n_used = static_cast<long long>(n);
  int level = 0;
  long long block_size = 1;
  while (data.size() >= 2) {
    ReblockLevel lv;
    lv.level = level;
    lv.block_size = block_size;
    lv.n_blocks = static_cast<long long>(data.size());
    lv.mean = mean(data);
    const double var = sample_variance(data);
    lv.std_error = std::sqrt(var / static_cast<double>(data.size()));
    lv.error_on_error =
        lv.std_error / std::sqrt(2.0 * static_cast<double>(data.size() - 1));
    result.levels.push_back(lv);

    std::vector<double> next(data.size() / 2);
    for (std::size_t i = 0; i < next.size(); ++i) {
      next[i] = 0.5 * (data[2 * i] + data[2 * i + 1]);
    }
    data.swap(next);
    ++level;
    block_size *= 2;
  }

  int chosen = -1;
  for (std::size_t l = 0; l + 1 < result.levels.size(); ++l) {
    const double step = std::abs(result.levels[l + 1].std_error -
                                 result.levels[l].std_error);
    if (step < result.levels[l].error_on_error) {
      chosen = static_cast<int>(l);
      result.plateau_found = true;
      break;
    }
  }
  if (chosen < 0) {
    chosen = 0;
    for (std::size_t l = 1; l < result.levels.size(); ++l) {
      if (result.levels[l].std_error > result.levels[chosen].std_error) {
        chosen = static_cast<int>(l);
      }
    }
  }
  result.chosen_level = chosen;
  result.mean = result.levels[chosen].mean;
  result.std_error = result.levels[chosen].std_error;
  result.error_on_error = result.levels[chosen].error_on_error;
  return result;
}

double ar1_inflation(double rho) {
  if (rho <= -1.0 || rho >= 1.0) throw ConfigError("AR(1) rho out of range");
  return std::sqrt((1.0 + rho) / (1.0 - rho));
}

double chi_squared_survival(double x, int dof) {
  if (dof < 1) throw ConfigError("chi-squared dof must be positive");
  return gamma_q(0.5 * dof, 0.5 * x);
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size() || p.empty()) {
    throw ConfigError("KL divergence needs equal-length distributions");
  }
  double sp = 0.0;
  double sq = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0.0 || q[i] < 0.0) {
      throw NumericalError("KL divergence needs nonnegative weights");
    }
    sp += p[i];
    sq += q[i];
  }
  if (sp <= 0.0 || sq <= 0.0) {
    throw NumericalError("KL divergence of a zero distribution");
  }
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double pi = p[i] / sp;
    if (pi == 0.0) continue;
    const double qi = q[i] / sq;
    if (qi <= 0.0) {
      throw NumericalError("KL divergence: support of p escapes q");
    }
    kl += pi * std::log(pi / qi);
  }
  return kl;
}

}  // namespace mcpqe
