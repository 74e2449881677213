#pragma once

#include <cstdint>

#include "rbminit/meanfield.hpp"
#include "rbminit/rbm.hpp"

namespace rbminit {

struct InitSpec {
  int n = 0;
  int m = 0;
  HiddenSpace hidden = HiddenSpace::Ising;
  /// Constant hidden bias; must be 0 for Ising hidden units and <= 0 otherwise.
  double c = 0.0;
  double beta = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// b = 0, c = spec.c, w_ij ~ Normal(0, (beta / sqrt(n + m))^2), drawn row-major
/// from stream 0 of spec.seed.
Rbm init_rbm(const InitSpec& spec);

/// find_beta_max(alpha, 0, c, hidden) memoized on (alpha, c) rounded to 1e-4.
double cached_beta_max(double alpha, double c, HiddenSpace hidden);

/// init_rbm with beta = beta_max(m / n, c, hidden).
Rbm dataset_free_init(int n, int m, HiddenSpace hidden, double c, std::uint64_t seed);

}  // namespace rbminit
