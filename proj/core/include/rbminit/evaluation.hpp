#pragma once

#include <cstdint>

#include "rbminit/rbm.hpp"

namespace rbminit {

/// Annealed importance sampling on the hidden-marginalized visible distribution.
struct MaisConfig {
  int samples = 1000;   // S, independent annealing runs
  int schedule = 1000;  // K, intermediate distributions
  std::uint64_t seed = 0;

  void validate() const;
};

struct MaisEstimate {
  double log_z = 0.0;
  /// Jackknife standard error of log_z (NaN when samples == 1).
  double std_error = 0.0;
};

/// (1/N) sum_mu ln P(v^mu) with an exact partition function.
double exact_log_likelihood(const Rbm& rbm, const Dataset& data);

/// (1/N) sum_mu visible_log_unnorm(v^mu) - log_z.
double log_likelihood(const Rbm& rbm, const Dataset& data, double log_z);

/**
 * ln Z estimate. The path anneals (w, c) linearly from 0 to the target with
 * b fixed, so the base distribution has independent visible spins and
 * ln Z_0 = sum_i ln 2cosh(b_i) + m ln 2. Each run takes one blocked Gibbs
 * sweep per intermediate temperature; run k uses stream k of config.seed.
 */
MaisEstimate mais_log_partition(const Rbm& rbm, const MaisConfig& config);

struct MaisVerification {
  double coarse_log_likelihood = 0.0;
  double fine_log_likelihood = 0.0;
  double relative_discrepancy = 0.0;
  bool passed = false;
};

/// Compares a coarse mAIS log-likelihood against a finer one.
MaisVerification verify_mais(const Rbm& rbm, const Dataset& data, const MaisConfig& coarse,
                             const MaisConfig& fine, double tolerance = 1e-3);

}  // namespace rbminit
