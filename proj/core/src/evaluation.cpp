#include "rbminit/evaluation.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "rbminit/errors.hpp"
#include "rbminit/numerics.hpp"

namespace rbminit {
namespace {

// Row sums of g(t * a) over the hidden units, as whole-array expressions so
// exp/log vectorize. ln(1 + e^-|x|) is accurate to ~1e-16 absolute, which is
// all a sum of log-weights needs.
Eigen::ArrayXd tempered_hidden_sums(HiddenSpace hidden, const Eigen::ArrayXXd& a, double t) {
  if (hidden == HiddenSpace::Ising) {
    const Eigen::ArrayXXd x = (t * a).abs();
    return (x + (1.0 + (-2.0 * x).exp()).log()).rowwise().sum();
  }
  const Eigen::ArrayXXd x = t * a;
  return (x.max(0.0) + (1.0 + (-x.abs()).exp()).log()).rowwise().sum();
}

}  // namespace

void MaisConfig::validate() const {
  if (samples < 1 || schedule < 1) {
    throw DomainError("mAIS needs at least one sample and one annealing step");
  }
}

double log_likelihood(const Rbm& rbm, const Dataset& data, double log_z) {
  if (data.size() == 0) {
    throw DomainError("log likelihood of an empty dataset");
  }
  return visible_log_unnorm(rbm, data.points).mean() - log_z;
}

double exact_log_likelihood(const Rbm& rbm, const Dataset& data) {
  return log_likelihood(rbm, data, log_partition_exact(rbm));
}

MaisEstimate mais_log_partition(const Rbm& rbm, const MaisConfig& config) {
  rbm.validate();
  config.validate();
  const int n = rbm.n();
  const int m = rbm.m();
  const int runs = config.samples;
  const int steps = config.schedule;
  const double hidden_off = rbm.hidden == HiddenSpace::Ising ? -1.0 : 0.0;
  const double hidden_gain = rbm.hidden == HiddenSpace::Ising ? 2.0 : 1.0;

  std::vector<Rng> streams;
  streams.reserve(runs);
  for (int k = 0; k < runs; ++k) {
    streams.push_back(make_stream(config.seed, static_cast<std::uint64_t>(k)));
  }

  // Base distribution: independent visible spins with P(v_i = +1) = sig(2 b_i).
  Eigen::MatrixXd v(runs, n);
  for (int k = 0; k < runs; ++k) {
    for (int i = 0; i < n; ++i) {
      v(k, i) = uniform01(streams[k]) < sigmoid(2.0 * rbm.b[i]) ? 1.0 : -1.0;
    }
  }

  Eigen::ArrayXd log_w = Eigen::ArrayXd::Zero(runs);
  Eigen::MatrixXd h(runs, m);
  for (int step = 1; step <= steps; ++step) {
    const double t_prev = static_cast<double>(step - 1) / steps;
    const double t = static_cast<double>(step) / steps;
    const Eigen::ArrayXXd a = ((v * rbm.w).rowwise() + rbm.c.transpose()).array();
    log_w += tempered_hidden_sums(rbm.hidden, a, t) - tempered_hidden_sums(rbm.hidden, a, t_prev);
    if (step == steps) {
      break;
    }

    // One blocked Gibbs sweep leaving the step-t distribution invariant.
    const Eigen::ArrayXXd p_h = ((hidden_gain * t) * a).logistic();
    for (int k = 0; k < runs; ++k) {
      for (int j = 0; j < m; ++j) {
        h(k, j) = uniform01(streams[k]) < p_h(k, j) ? 1.0 : hidden_off;
      }
    }
    const Eigen::MatrixXd field = ((t * h) * rbm.w.transpose()).rowwise() + rbm.b.transpose();
    const Eigen::ArrayXXd p_v = (2.0 * field.array()).logistic();
    for (int k = 0; k < runs; ++k) {
      for (int i = 0; i < n; ++i) {
        v(k, i) = uniform01(streams[k]) < p_v(k, i) ? 1.0 : -1.0;
      }
    }
  }

  double log_z0 = m * std::log(2.0);
  for (int i = 0; i < n; ++i) {
    log_z0 += log_two_cosh(rbm.b[i]);
  }

  const double top = log_w.maxCoeff();
  const Eigen::ArrayXd scaled = (log_w - top).exp();
  const double total = scaled.sum();
  MaisEstimate out;
  out.log_z = log_z0 + top + std::log(total / runs);
  if (runs < 2) {
    out.std_error = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  Eigen::ArrayXd leave_one_out(runs);
  for (int k = 0; k < runs; ++k) {
    leave_one_out[k] = top + std::log((total - scaled[k]) / (runs - 1));
  }
  const double mean = leave_one_out.mean();
  out.std_error =
      std::sqrt((runs - 1.0) / runs * (leave_one_out - mean).square().sum());
  return out;
}

MaisVerification verify_mais(const Rbm& rbm, const Dataset& data, const MaisConfig& coarse,
                             const MaisConfig& fine, double tolerance) {
  MaisVerification out;
  out.coarse_log_likelihood = log_likelihood(rbm, data, mais_log_partition(rbm, coarse).log_z);
  out.fine_log_likelihood = log_likelihood(rbm, data, mais_log_partition(rbm, fine).log_z);
  out.relative_discrepancy = std::abs(out.coarse_log_likelihood - out.fine_log_likelihood) /
                             std::abs(out.fine_log_likelihood);
  out.passed = out.relative_discrepancy < tolerance;
  return out;
}

}  // namespace rbminit
