#pragma once

#include <functional>

namespace rbminit {

struct GoldenSectionResult {
  double x = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

/// Maximizes a unimodal f on [lo, hi] until the bracket is narrower than `tolerance`.
GoldenSectionResult golden_section_maximize(const std::function<double(double)>& f, double lo,
                                            double hi, double tolerance);

}  // namespace rbminit
