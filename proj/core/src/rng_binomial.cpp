#include <algorithm>
#include <cmath>

#include "mcpqe/rng.hpp"

namespace mcpqe {

namespace {

// Geometric-skip inversion, O(n*p) expected draws.  Used when n*p is small.
long long binomial_inversion(RngStream& rng, long long n, double p) {
  const double log_q = std::log1p(-p);
  long long k = 0;
  long long pos = 0;
  while (true) {
    double u;
    do {
      u = rng.uniform();
    } while (u <= 0.0);
    pos += static_cast<long long>(std::floor(std::log(u) / log_q)) + 1;
    if (pos > n) {
      return k;
    }
    ++k;
  }
}

// Hormann's BTRS transformed-rejection sampler, exact for n*p >= 10, p <= 1/2.
long long binomial_btrs(RngStream& rng, long long n, double p) {
  const double nd = static_cast<double>(n);
  const double spq = std::sqrt(nd * p * (1.0 - p));
  const double b = 1.15 + 2.53 * spq;
  const double a = -0.0873 + 0.0248 * b + 0.01 * p;
  const double c = nd * p + 0.5;
  const double v_r = 0.92 - 4.2 / b;
  const double alpha = (2.83 + 5.1 / b) * spq;
  const double lpq = std::log(p / (1.0 - p));
  const long long m = static_cast<long long>(std::floor((nd + 1.0) * p));
  const double h = std::lgamma(m + 1.0) + std::lgamma(nd - m + 1.0);
  while (true) {
    const double u = rng.uniform() - 0.5;
    double v = rng.uniform();
    const double us = 0.5 - std::fabs(u);
    const double kd = std::floor((2.0 * a / us + b) * u + c);
    if (kd < 0.0 || kd > nd) {
      continue;
    }
    const long long k = static_cast<long long>(kd);
    if (us >= 0.07 && v <= v_r) {
      return k;
    }
    v = v * alpha / (a / (us * us) + b);
    if (std::log(v) <= h - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0)
                           + (kd - m) * lpq) {
      return k;
    }
  }
}

}  // namespace

long long RngStream::binomial(long long n, double p) {
  if (n <= 0 || p <= 0.0) {
    return 0;
  }
  if (p >= 1.0) {
    return n;
  }
  if (p > 0.5) {
    return n - binomial(n, 1.0 - p);
  }
  if (static_cast<double>(n) * p < 10.0) {
    return binomial_inversion(*this, n, p);
  }
  return binomial_btrs(*this, n, p);
}

}  // namespace mcpqe
