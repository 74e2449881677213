#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "rbminit/evaluation.hpp"
#include "rbminit/rbm.hpp"

namespace rbminit {

/// d ln L / d theta, laid out like the Rbm parameters.
struct Gradient {
  Eigen::VectorXd db;
  Eigen::VectorXd dc;
  Eigen::MatrixXd dw;

  static Gradient zeros_like(const Rbm& rbm);
  bool all_finite() const;
};

/// Data expectations minus exact model expectations. Needs n <= 25.
Gradient exact_gradient(const Rbm& rbm, const Dataset& batch);
Gradient exact_gradient(const Rbm& rbm, const Dataset& batch, const ModelExpectations& model);

/// Persistent Gibbs chains; chain k draws from its own stream.
struct PersistentChains {
  Eigen::MatrixXd states;  // chains x n
  std::vector<Rng> streams;

  int size() const noexcept { return static_cast<int>(states.rows()); }
};

/// Uniform random chains, relaxed for `relaxation` sweeps on `rbm`.
PersistentChains init_chains(const Rbm& rbm, int count, int relaxation, std::uint64_t seed);

void advance_chains(const Rbm& rbm, PersistentChains& chains, int sweeps);

/// Advances every chain `sweeps` sweeps, then estimates the model term from
/// the chain states (hidden units enter through E[h | v]).
Gradient pcd_gradient(const Rbm& rbm, const Dataset& batch, PersistentChains& chains, int sweeps);

struct AdamOptions {
  double lr = 0.01;
  double decay1 = 0.9;
  double decay2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  AdamOptions options;
  Gradient first;
  Gradient second;
  long step = 0;

  static AdamState for_rbm(const Rbm& rbm, const AdamOptions& options = {});
};

/// Bias-corrected Adam step in the ascent direction. Throws DomainError on a
/// non-finite gradient or mismatched shapes.
void adam_step(AdamState& state, Rbm& rbm, const Gradient& grad);

enum class GradientMode { Exact, Pcd };
enum class EvaluationMode { Exact, Mais };

struct TrainConfig {
  int epochs = 200;
  int batch_size = 0;  // 0: full batch
  GradientMode mode = GradientMode::Exact;
  int chains = 1000;
  int pcd_steps = 40;
  int relaxation = 500;
  double lr = 0.01;
  std::uint64_t seed = 0;
  EvaluationMode evaluation = EvaluationMode::Exact;
  MaisConfig mais{};

  void validate(const Rbm& rbm, const Dataset& data) const;
};

struct EpochMetrics {
  int epoch = 0;
  double log_likelihood = 0.0;
};

using EpochHook = std::function<void(const EpochMetrics&, const Rbm&)>;

struct TrainResult {
  Rbm rbm;
  std::vector<EpochMetrics> metrics;  // epoch 0 is the initial model
};

TrainResult train(Rbm rbm, const Dataset& data, const TrainConfig& config,
                  const EpochHook& hook = {});

/// CSV `epoch,log_likelihood,beta_multiplier,seed`.
void write_metrics_csv(std::ostream& os, std::span<const EpochMetrics> metrics,
                       double beta_multiplier, std::uint64_t seed, bool header = true);

}  // namespace rbminit
