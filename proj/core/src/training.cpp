#include "rbminit/training.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <optional>
#include <ostream>

#include "rbminit/errors.hpp"

namespace rbminit {
namespace {

// Stream layout under one experiment seed.
constexpr std::uint64_t kShuffleStream = 1;
constexpr std::uint64_t kChainStreamBase = 1'000'000;
constexpr std::uint64_t kMaisSeedStream = 2;

void check_batch(const Rbm& rbm, const Dataset& batch) {
  if (batch.n() != rbm.n()) {
    throw DimensionError("batch width does not match the visible layer");
  }
  if (batch.size() == 0) {
    throw DomainError("empty batch");
  }
}

// Data term of the gradient: sample means of v, E[h|v] and v E[h|v]'.
Gradient data_term(const Rbm& rbm, const Eigen::MatrixXd& points) {
  const Eigen::MatrixXd mean = hidden_means(rbm, points);
  const double inv = 1.0 / static_cast<double>(points.rows());
  Gradient g;
  g.db = points.colwise().sum().transpose() * inv;
  g.dc = mean.colwise().sum().transpose() * inv;
  g.dw = points.transpose() * mean * inv;
  return g;
}

bool same_shape(const Gradient& g, const Rbm& rbm) {
  return g.db.size() == rbm.n() && g.dc.size() == rbm.m() && g.dw.rows() == rbm.n() &&
         g.dw.cols() == rbm.m();
}

}  // namespace

Gradient Gradient::zeros_like(const Rbm& rbm) {
  return {Eigen::VectorXd::Zero(rbm.n()), Eigen::VectorXd::Zero(rbm.m()),
          Eigen::MatrixXd::Zero(rbm.n(), rbm.m())};
}

bool Gradient::all_finite() const { return db.allFinite() && dc.allFinite() && dw.allFinite(); }

Gradient exact_gradient(const Rbm& rbm, const Dataset& batch) {
  return exact_gradient(rbm, batch, exact_model_expectations(rbm));
}

Gradient exact_gradient(const Rbm& rbm, const Dataset& batch, const ModelExpectations& model) {
  check_batch(rbm, batch);
  Gradient g = data_term(rbm, batch.points);
  g.db -= model.v;
  g.dc -= model.h;
  g.dw -= model.vh;
  return g;
}

PersistentChains init_chains(const Rbm& rbm, int count, int relaxation, std::uint64_t seed) {
  if (count < 1 || relaxation < 0) {
    throw DomainError("need at least one chain and a nonnegative relaxation");
  }
  PersistentChains chains;
  chains.states.resize(count, rbm.n());
  chains.streams.reserve(count);
  for (int k = 0; k < count; ++k) {
    chains.streams.push_back(make_stream(seed, kChainStreamBase + static_cast<std::uint64_t>(k)));
    chains.states.row(k) = random_visible(rbm.n(), chains.streams.back()).transpose();
  }
  advance_chains(rbm, chains, relaxation);
  return chains;
}

void advance_chains(const Rbm& rbm, PersistentChains& chains, int sweeps) {
  for (int k = 0; k < chains.size(); ++k) {
    Eigen::VectorXd v = chains.states.row(k).transpose();
    for (int s = 0; s < sweeps; ++s) {
      v = gibbs_sweep(rbm, v, chains.streams[k]).v;
    }
    chains.states.row(k) = v.transpose();
  }
}

Gradient pcd_gradient(const Rbm& rbm, const Dataset& batch, PersistentChains& chains, int sweeps) {
  check_batch(rbm, batch);
  if (chains.states.cols() != rbm.n()) {
    throw DimensionError("chain width does not match the visible layer");
  }
  advance_chains(rbm, chains, sweeps);
  Gradient g = data_term(rbm, batch.points);
  const Gradient model = data_term(rbm, chains.states);
  g.db -= model.db;
  g.dc -= model.dc;
  g.dw -= model.dw;
  return g;
}

AdamState AdamState::for_rbm(const Rbm& rbm, const AdamOptions& options) {
  AdamState s;
  s.options = options;
  s.first = Gradient::zeros_like(rbm);
  s.second = Gradient::zeros_like(rbm);
  return s;
}

void adam_step(AdamState& state, Rbm& rbm, const Gradient& grad) {
  if (!same_shape(grad, rbm) || !same_shape(state.first, rbm)) {
    throw DimensionError("gradient / optimizer state shapes do not match the RBM");
  }
  if (!grad.all_finite()) {
    throw DomainError("non-finite gradient");
  }
  const AdamOptions& o = state.options;
  ++state.step;
  const double c1 = 1.0 - std::pow(o.decay1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(o.decay2, static_cast<double>(state.step));

  auto update = [&](auto& param, auto& m1, auto& m2, const auto& g) {
    m1 = o.decay1 * m1 + (1.0 - o.decay1) * g;
    m2 = o.decay2 * m2 + (1.0 - o.decay2) * g.cwiseProduct(g);
    param.array() += o.lr * (m1.array() / c1) / ((m2.array() / c2).sqrt() + o.epsilon);
  };
  update(rbm.b, state.first.db, state.second.db, grad.db);
  update(rbm.c, state.first.dc, state.second.dc, grad.dc);
  update(rbm.w, state.first.dw, state.second.dw, grad.dw);
}

void TrainConfig::validate(const Rbm& rbm, const Dataset& data) const {
  if (epochs < 0 || batch_size < 0 || !(lr > 0.0)) {
    throw DomainError("epochs and batch size must be >= 0, lr must be positive");
  }
  if (data.size() == 0 || data.n() != rbm.n()) {
    throw DimensionError("dataset does not match the visible layer");
  }
  if (mode == GradientMode::Exact && rbm.n() > kExactVisibleCap) {
    throw EnumerationCapError(rbm.n(), kExactVisibleCap);
  }
  if (evaluation == EvaluationMode::Exact && rbm.n() > kExactVisibleCap) {
    throw EnumerationCapError(rbm.n(), kExactVisibleCap);
  }
  if (mode == GradientMode::Pcd && (chains < 1 || pcd_steps < 1 || relaxation < 0)) {
    throw DomainError("PCD needs chains >= 1, pcd_steps >= 1, relaxation >= 0");
  }
  if (evaluation == EvaluationMode::Mais) {
    mais.validate();
  }
}

TrainResult train(Rbm rbm, const Dataset& data, const TrainConfig& config, const EpochHook& hook) {
  rbm.validate();
  config.validate(rbm, data);

  const int total = data.size();
  const int batch = config.batch_size == 0 ? total : std::min(config.batch_size, total);
  const bool full_batch = batch == total;
  Rng shuffle_rng = make_stream(config.seed, kShuffleStream);
  const std::uint64_t mais_seed_base = make_stream(config.seed, kMaisSeedStream)();

  std::optional<PersistentChains> chains;
  if (config.mode == GradientMode::Pcd) {
    chains = init_chains(rbm, config.chains, config.relaxation, config.seed);
  }

  // In exact full-batch mode one enumeration per epoch serves both the
  // metric of the finished epoch and the next gradient.
  std::optional<ModelExpectations> cached;
  auto evaluate = [&](int epoch) {
    if (config.evaluation == EvaluationMode::Mais) {
      MaisConfig mais = config.mais;
      mais.seed = mais_seed_base + static_cast<std::uint64_t>(epoch);
      return log_likelihood(rbm, data, mais_log_partition(rbm, mais).log_z);
    }
    if (config.mode == GradientMode::Exact && full_batch) {
      cached = exact_model_expectations(rbm);
      return log_likelihood(rbm, data, cached->log_z);
    }
    return exact_log_likelihood(rbm, data);
  };

  TrainResult result;
  auto record = [&](int epoch) {
    const EpochMetrics row{epoch, evaluate(epoch)};
    result.metrics.push_back(row);
    if (hook) {
      hook(row, rbm);
    }
  };

  AdamState adam = AdamState::for_rbm(rbm, AdamOptions{config.lr});
  std::vector<int> order(total);
  std::iota(order.begin(), order.end(), 0);

  record(0);
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    if (!full_batch) {
      std::shuffle(order.begin(), order.end(), shuffle_rng);
    }
    for (int start = 0; start < total; start += batch) {
      const int count = std::min(batch, total - start);
      const Dataset mini =
          full_batch ? data : data.rows(std::span<const int>(order).subspan(start, count));
      Gradient grad;
      if (config.mode == GradientMode::Pcd) {
        grad = pcd_gradient(rbm, mini, *chains, config.pcd_steps);
      } else if (cached) {
        grad = exact_gradient(rbm, mini, *cached);
      } else {
        grad = exact_gradient(rbm, mini);
      }
      cached.reset();
      adam_step(adam, rbm, grad);
    }
    record(epoch);
  }
  result.rbm = std::move(rbm);
  return result;
}

void write_metrics_csv(std::ostream& os, std::span<const EpochMetrics> metrics,
                       double beta_multiplier, std::uint64_t seed, bool header) {
  if (header) {
    os << "epoch,log_likelihood,beta_multiplier,seed\n";
  }
  const auto flags = os.flags();
  const auto precision = os.precision();
  os << std::setprecision(12);
  for (const EpochMetrics& row : metrics) {
    os << row.epoch << ',' << row.log_likelihood << ',' << beta_multiplier << ',' << seed << '\n';
  }
  os.flags(flags);
  os.precision(precision);
}

}  // namespace rbminit
