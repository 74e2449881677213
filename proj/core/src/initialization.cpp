#include "rbminit/initialization.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <tuple>

#include "rbminit/errors.hpp"

namespace rbminit {

void InitSpec::validate() const {
  if (n < 1 || m < 1) {
    throw DomainError("layer sizes must be positive");
  }
  if (!std::isfinite(c) || c > 0.0) {
    throw DomainError("hidden bias c must be finite and <= 0");
  }
  if (hidden == HiddenSpace::Ising && c != 0.0) {
    throw DomainError("hidden bias c must be 0 for ising hidden units");
  }
  if (!std::isfinite(beta) || beta < 0.0) {
    throw DomainError("beta must be a nonnegative finite number");
  }
}

Rbm init_rbm(const InitSpec& spec) {
  spec.validate();
  Rbm rbm(spec.n, spec.m, spec.hidden);
  rbm.c.setConstant(spec.c);
  if (spec.beta == 0.0) {
    return rbm;
  }
  const double sigma = spec.beta / std::sqrt(static_cast<double>(spec.n + spec.m));
  Rng rng = make_stream(spec.seed, 0);
  std::normal_distribution<double> normal(0.0, sigma);
  for (int i = 0; i < spec.n; ++i) {
    for (int j = 0; j < spec.m; ++j) {
      rbm.w(i, j) = normal(rng);
    }
  }
  return rbm;
}

double cached_beta_max(double alpha, double c, HiddenSpace hidden) {
  using Key = std::tuple<long long, long long, HiddenSpace>;
  static std::mutex mutex;
  static std::map<Key, double> memo;

  const Key key{std::llround(alpha * 1e4), std::llround(c * 1e4), hidden};
  {
    std::lock_guard lock(mutex);
    if (auto it = memo.find(key); it != memo.end()) {
      return it->second;
    }
  }
  const double value = find_beta_max(alpha, 0.0, c, hidden);
  std::lock_guard lock(mutex);
  memo.emplace(key, value);
  return value;
}

Rbm dataset_free_init(int n, int m, HiddenSpace hidden, double c, std::uint64_t seed) {
  InitSpec spec{n, m, hidden, c, 0.0, seed};
  spec.validate();
  spec.beta = cached_beta_max(static_cast<double>(m) / n, c, hidden);
  return init_rbm(spec);
}

}  // namespace rbminit
