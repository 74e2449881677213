#include "rbminit/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace rbminit {
namespace {

struct Orthonormal {
  double top = 0.0;    // p_K(z), up to the common scale
  double below = 0.0;  // p_{K-1}(z), same scale
  double inverse_square_sum = 0.0;
};

// Orthonormal Hermite polynomials for the standard normal weight:
// p_{k+1} = (z p_k - sqrt(k) p_{k-1}) / sqrt(k + 1). Values are rescaled on the
// fly so large orders at the outer nodes do not overflow.
Orthonormal orthonormal_at(double z, int order) {
  constexpr double kBig = 1e100;
  double prev = 0.0;
  double cur = 1.0;
  double squares = 1.0;
  double log_scale = 0.0;  // every stored value is multiplied by exp(-log_scale)
  for (int k = 0; k + 1 < order; ++k) {
    const double next = (z * cur - std::sqrt(static_cast<double>(k)) * prev) / std::sqrt(k + 1.0);
    prev = cur;
    cur = next;
    squares += cur * cur;
    if (std::abs(cur) > kBig) {
      prev /= kBig;
      cur /= kBig;
      squares /= kBig * kBig;
      log_scale += std::log(kBig);
    }
  }
  Orthonormal out;
  out.below = cur;
  out.top = (z * cur - std::sqrt(order - 1.0) * prev) / std::sqrt(static_cast<double>(order));
  out.inverse_square_sum = std::exp(-std::log(squares) - 2.0 * log_scale);
  return out;
}

}  // namespace

QuadratureRule::QuadratureRule(int order) {
  if (order < 1) {
    throw DomainError("quadrature order must be positive");
  }
  const Eigen::Index k = order;
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(k);
  Eigen::VectorXd sub(std::max<Eigen::Index>(k - 1, 0));
  for (Eigen::Index i = 0; i + 1 < k; ++i) {
    sub[i] = std::sqrt(static_cast<double>(i + 1));
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error("Golub-Welsch eigen-decomposition failed");
  }

  // Eigenvalues come back ascending. The eigenvector weights are only
  // accurate in absolute terms, so polish each node with Newton on the
  // orthonormal recurrence and take w = 1 / sum_k p_k(z)^2, which keeps the
  // tail weights accurate relative to their size.
  const Eigen::VectorXd& lambda = solver.eigenvalues();
  nodes_.resize(order);
  weights_.resize(order);
  for (int i = 0; i < order; ++i) {
    double z = lambda[i];
    for (int iter = 0; iter < 3; ++iter) {
      const Orthonormal p = orthonormal_at(z, order);
      const double step = p.top / (std::sqrt(static_cast<double>(order)) * p.below);
      if (!std::isfinite(step)) {
        break;
      }
      z -= step;
    }
    nodes_[i] = z;
    weights_[i] = orthonormal_at(z, order).inverse_square_sum;
  }

  // Enforce exact mirror symmetry; the middle node of an odd rule is 0.
  for (int i = 0, j = order - 1; i <= j; ++i, --j) {
    const double z = 0.5 * (nodes_[j] - nodes_[i]);
    const double w = 0.5 * (weights_[i] + weights_[j]);
    nodes_[i] = -z;
    nodes_[j] = z;
    weights_[i] = w;
    weights_[j] = w;
  }
  if (order % 2 == 1) {
    nodes_[order / 2] = 0.0;
  }

  // Sum from the tails inward so the tiny weights are not lost.
  double total = 0.0;
  for (int i = 0; i < order / 2; ++i) {
    total += weights_[i] + weights_[order - 1 - i];
  }
  if (order % 2 == 1) {
    total += weights_[order / 2];
  }
  for (double& w : weights_) {
    w /= total;
  }
  while (2 * bulk_begin_ + 1 < weights_.size() && weights_[bulk_begin_] < kNegligibleWeight) {
    ++bulk_begin_;
  }
}

const QuadratureRule& QuadratureRule::standard_normal(int order) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<QuadratureRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[order];
  if (!slot) {
    slot = std::make_unique<QuadratureRule>(order);
  }
  return *slot;
}

}  // namespace rbminit
