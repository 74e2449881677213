#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>

#include "rbminit/hidden_space.hpp"
#include "rbminit/random.hpp"

namespace rbminit {

/// Largest visible layer for which exact enumeration (2^n states) is allowed.
inline constexpr int kExactVisibleCap = 25;

/**
 * Bernoulli-Bernoulli RBM with visible units in {-1, +1} and hidden units in
 * the chosen HiddenSpace:
 *   P(v, h) ∝ exp(b'v + c'h + v'Wh),   W is n x m.
 */
struct Rbm {
  HiddenSpace hidden = HiddenSpace::Ising;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
  Eigen::MatrixXd w;

  Rbm() = default;
  /// All-zero parameters.
  Rbm(int n, int m, HiddenSpace hidden);

  int n() const noexcept { return static_cast<int>(b.size()); }
  int m() const noexcept { return static_cast<int>(c.size()); }

  /// Throws DimensionError on inconsistent shapes, DomainError on non-finite values.
  void validate() const;
};

/// N points in {-1, +1}^n, one per row.
struct Dataset {
  Eigen::MatrixXd points;
  std::string source;

  int n() const noexcept { return static_cast<int>(points.cols()); }
  int size() const noexcept { return static_cast<int>(points.rows()); }

  /// Throws DomainError if any entry is not exactly -1 or +1.
  void validate() const;
  Dataset rows(std::span<const int> indices) const;
};

/// -(b'v + c'h + v'Wh).
double neg_log_unnorm(const Rbm& rbm, const Eigen::VectorXd& v, const Eigen::VectorXd& h);

/// ln sum_h exp(-E(v, h)) = b'v + sum_j g(c_j + (W'v)_j).
double visible_log_unnorm(const Rbm& rbm, const Eigen::VectorXd& v);

/// Row-wise visible_log_unnorm for an N x n matrix of states.
Eigen::VectorXd visible_log_unnorm(const Rbm& rbm, const Eigen::MatrixXd& states);

/// ln Z by enumerating all 2^n visible states. Throws EnumerationCapError for n > 25.
double log_partition_exact(const Rbm& rbm);

/// P(h_j = +1 | v) for every hidden unit (+1 means 1 for binary units).
Eigen::VectorXd hidden_conditional(const Rbm& rbm, const Eigen::VectorXd& v);

/// P(v_i = +1 | h) for every visible unit.
Eigen::VectorXd visible_conditional(const Rbm& rbm, const Eigen::VectorXd& h);

/// E[h | v], row-wise over an N x n matrix of visible states (N x m result).
Eigen::MatrixXd hidden_means(const Rbm& rbm, const Eigen::MatrixXd& states);

struct GibbsState {
  Eigen::VectorXd v;
  Eigen::VectorXd h;
};

/// One blocked sweep: h' ~ P(h | v), then v' ~ P(v | h').
GibbsState gibbs_sweep(const Rbm& rbm, const Eigen::VectorXd& v, Rng& rng);

/// Uniform random state of the visible layer.
Eigen::VectorXd random_visible(int n, Rng& rng);

/// Exact model expectations E[v], E[h], E[v h'] and ln Z, from one enumeration pass.
struct ModelExpectations {
  double log_z = 0.0;
  Eigen::VectorXd v;
  Eigen::VectorXd h;
  Eigen::MatrixXd vh;
};

ModelExpectations exact_model_expectations(const Rbm& rbm);

}  // namespace rbminit
