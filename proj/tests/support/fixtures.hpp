#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <random>

#include "rbminit/rbm.hpp"

namespace fixture {

/// Random RBM with N(0, scale^2) parameters from a test-local generator.
inline rbminit::Rbm random_rbm(int n, int m, rbminit::HiddenSpace hidden, double scale,
                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, scale);
  rbminit::Rbm rbm(n, m, hidden);
  for (int i = 0; i < n; ++i) {
    rbm.b[i] = normal(rng);
  }
  for (int j = 0; j < m; ++j) {
    rbm.c[j] = normal(rng);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      rbm.w(i, j) = normal(rng);
    }
  }
  return rbm;
}

inline rbminit::Dataset random_dataset(int rows, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  rbminit::Dataset data;
  data.points.resize(rows, n);
  for (int r = 0; r < rows; ++r) {
    for (int i = 0; i < n; ++i) {
      data.points(r, i) = coin(rng) ? 1.0 : -1.0;
    }
  }
  return data;
}

/// Fixed n=12, m=8 instance with moderate weights, shared by the mAIS checks.
inline rbminit::Rbm mais_reference_rbm() { return random_rbm(12, 8, rbminit::HiddenSpace::Binary, 0.5, 2024); }

/// Paper's appendix table for binary hidden units: rows alpha = 0.25..3 (step
/// 0.25), columns c = 0, -1, ..., -6.
inline constexpr std::array<std::array<double, 7>, 12> kBinaryBetaMax{{
    {1.597, 1.873, 2.216, 2.558, 2.887, 3.196, 3.488},
    {1.529, 1.840, 2.227, 2.618, 2.989, 3.338, 3.666},
    {1.511, 1.853, 2.280, 2.712, 3.120, 3.503, 3.863},
    {1.510, 1.879, 2.344, 2.812, 3.255, 3.669, 4.058},
    {1.517, 1.911, 2.409, 2.911, 3.385, 3.829, 4.245},
    {1.527, 1.944, 2.473, 3.007, 3.512, 3.982, 4.424},
    {1.539, 1.977, 2.536, 3.100, 3.633, 4.130, 4.595},
    {1.551, 2.009, 2.596, 3.190, 3.749, 4.271, 4.759},
    {1.564, 2.040, 2.654, 3.275, 3.861, 4.406, 4.917},
    {1.576, 2.070, 2.710, 3.358, 3.968, 4.536, 5.069},
    {1.588, 2.099, 2.764, 3.437, 4.071, 4.662, 5.215},
    {1.600, 2.127, 2.815, 3.514, 4.171, 4.783, 5.356},
}};

/// Paper's appendix table for +-1 hidden units, alpha = 0.5, 1, ..., 3.
inline constexpr std::array<double, 6> kIsingAlphas{0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
inline constexpr std::array<double, 6> kIsingBetaMax{1.456, 1.414, 1.429, 1.456, 1.488, 1.520};

}  // namespace fixture
