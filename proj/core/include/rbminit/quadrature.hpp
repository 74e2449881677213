#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "rbminit/errors.hpp"

namespace rbminit {

/**
 * Gauss quadrature rule for the standard Gaussian measure
 *   Dz = exp(-z^2/2) dz / sqrt(2 pi).
 *
 * Nodes are the zeros of the probabilists' Hermite polynomial He_K, obtained
 * by Golub-Welsch from the Jacobi matrix of the recurrence
 * He_{k+1} = z He_k - k He_{k-1}. Weights sum to one. A rule of order K
 * integrates polynomials up to degree 2K-1 exactly.
 */
class QuadratureRule {
 public:
  static constexpr int kDefaultOrder = 101;

  explicit QuadratureRule(int order = kDefaultOrder);

  /// Shared, lazily built rule of the given order. Thread-safe.
  static const QuadratureRule& standard_normal(int order = kDefaultOrder);

  int order() const noexcept { return static_cast<int>(nodes_.size()); }
  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }

  /// Nodes whose weight is at least kNegligibleWeight. High orders put most
  /// nodes far out in the tails; for bounded integrands (or ones growing
  /// linearly) the dropped terms are below double precision.
  std::span<const double> bulk_nodes() const noexcept { return bulk(nodes_); }
  std::span<const double> bulk_weights() const noexcept { return bulk(weights_); }

  static constexpr double kNegligibleWeight = 1e-22;

 private:
  std::span<const double> bulk(const std::vector<double>& v) const noexcept {
    return std::span<const double>(v).subspan(bulk_begin_, v.size() - 2 * bulk_begin_);
  }

  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::size_t bulk_begin_ = 0;
};

/// sum_i w_i f(z_i). Throws NodeEvaluationError if f is not finite at a node.
template <class F>
double gaussian_integrate(const QuadratureRule& rule, F&& f) {
  const auto z = rule.nodes();
  const auto w = rule.weights();
  double acc = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double fz = f(z[i]);
    if (!std::isfinite(fz)) {
      throw NodeEvaluationError(z[i], fz);
    }
    acc += w[i] * fz;
  }
  return acc;
}

}  // namespace rbminit
