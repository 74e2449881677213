#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rbminit/rbm.hpp"

namespace rbminit {

struct ToySpec {
  int n = 20;
  int per_pattern = 100;
  double flip_prob = 0.15;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Four base patterns as rows: all +1, all -1, first n/2 +1 then -1, and its reverse.
Eigen::MatrixXd toy_base_patterns(int n);

/// per_pattern noisy copies of each base pattern (pattern-major row order),
/// every element flipped independently with probability flip_prob.
Dataset gen_toy(const ToySpec& spec);

/// Otsu threshold over a 256-bin histogram spanning [min, max].
/// Throws DomainError when all values are equal.
double otsu_threshold(std::span<const double> values);

enum class BinarizeMode {
  ElementWise,  // one threshold per feature column
  PointWise,    // one threshold per sample row
};

/// values > threshold -> +1, otherwise -1. A constant group maps to -1 and
/// appends a message to `warnings` when given.
Dataset binarize(const Eigen::MatrixXd& values, BinarizeMode mode,
                 std::vector<std::string>* warnings = nullptr);

}  // namespace rbminit
