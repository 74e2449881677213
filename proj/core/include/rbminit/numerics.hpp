#pragma once

#include <algorithm>
#include <cmath>
#include <span>

namespace rbminit {

inline double sigmoid(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// ln(1 + e^x) without overflow.
inline double softplus(double x) {
  return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

// ln(2 cosh x) without overflow.
inline double log_two_cosh(double x) {
  const double a = std::abs(x);
  return a + std::log1p(std::exp(-2.0 * a));
}

inline double log_sum_exp(std::span<const double> xs) {
  if (xs.empty()) {
    return -INFINITY;
  }
  double hi = -INFINITY;
  for (double x : xs) {
    hi = std::max(hi, x);
  }
  if (!std::isfinite(hi)) {
    return hi;
  }
  double acc = 0.0;
  for (double x : xs) {
    acc += std::exp(x - hi);
  }
  return hi + std::log(acc);
}

}  // namespace rbminit
