#include "rbminit/datasets.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "rbminit/errors.hpp"

namespace rbminit {

void ToySpec::validate() const {
  if (n < 2 || per_pattern < 1) {
    throw DomainError("toy spec needs n >= 2 and per_pattern >= 1");
  }
  if (!(flip_prob >= 0.0 && flip_prob <= 1.0)) {
    throw DomainError("flip_prob must lie in [0, 1]");
  }
}

Eigen::MatrixXd toy_base_patterns(int n) {
  if (n < 2) {
    throw DomainError("toy patterns need n >= 2");
  }
  Eigen::MatrixXd base(4, n);
  base.row(0).setOnes();
  base.row(1).setConstant(-1.0);
  const int half = n / 2;
  for (int i = 0; i < n; ++i) {
    base(2, i) = i < half ? 1.0 : -1.0;
    base(3, i) = -base(2, i);
  }
  return base;
}

Dataset gen_toy(const ToySpec& spec) {
  spec.validate();
  const Eigen::MatrixXd base = toy_base_patterns(spec.n);
  Rng rng = make_stream(spec.seed, 0);
  Dataset out;
  out.source = "toy";
  out.points.resize(4 * spec.per_pattern, spec.n);
  Eigen::Index row = 0;
  for (int p = 0; p < 4; ++p) {
    for (int k = 0; k < spec.per_pattern; ++k, ++row) {
      for (int i = 0; i < spec.n; ++i) {
        const bool flip = uniform01(rng) < spec.flip_prob;
        out.points(row, i) = flip ? -base(p, i) : base(p, i);
      }
    }
  }
  return out;
}

double otsu_threshold(std::span<const double> values) {
  if (values.empty()) {
    throw DomainError("otsu threshold of an empty sample");
  }
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw DomainError("otsu threshold needs finite values");
  }
  if (!(hi > lo)) {
    throw DomainError("otsu threshold of a constant sample");
  }

  constexpr int kBins = 256;
  const double width = (hi - lo) / kBins;
  std::array<double, kBins> count{};
  for (double x : values) {
    const int bin = std::min(kBins - 1, static_cast<int>((x - lo) / width));
    count[bin] += 1.0;
  }

  const double total = static_cast<double>(values.size());
  double total_sum = 0.0;
  for (int k = 0; k < kBins; ++k) {
    total_sum += count[k] * (k + 0.5);
  }

  // Between-class variance for the split "bins <= k | bins > k", in bin units.
  std::array<double, kBins - 1> sigma{};
  double w0 = 0.0;
  double s0 = 0.0;
  double best = -1.0;
  for (int k = 0; k < kBins - 1; ++k) {
    w0 += count[k];
    s0 += count[k] * (k + 0.5);
    const double w1 = total - w0;
    if (w0 == 0.0 || w1 == 0.0) {
      sigma[k] = 0.0;
    } else {
      const double gap = s0 / w0 - (total_sum - s0) / w1;
      sigma[k] = w0 * w1 * gap * gap;
    }
    best = std::max(best, sigma[k]);
  }

  const double slack = best * 1e-12;
  int first = -1;
  int last = -1;
  for (int k = 0; k < kBins - 1; ++k) {
    if (sigma[k] >= best - slack) {
      if (first < 0) {
        first = k;
      }
      last = k;
    }
  }
  const double split = 0.5 * (first + last) + 1.0;
  return lo + split * width;
}

namespace {

void binarize_group(const Eigen::Ref<const Eigen::VectorXd>& group, Eigen::Ref<Eigen::VectorXd> out,
                    const std::string& label, std::vector<std::string>* warnings) {
  const double lo = group.minCoeff();
  const double hi = group.maxCoeff();
  if (!(hi > lo)) {
    out.setConstant(-1.0);
    if (warnings != nullptr) {
      warnings->push_back(label + " is constant; mapped to -1");
    }
    return;
  }
  const std::span<const double> view(group.data(), static_cast<std::size_t>(group.size()));
  const double threshold = otsu_threshold(view);
  out = (group.array() > threshold).select(Eigen::VectorXd::Ones(group.size()),
                                           -Eigen::VectorXd::Ones(group.size()));
}

}  // namespace

Dataset binarize(const Eigen::MatrixXd& values, BinarizeMode mode,
                 std::vector<std::string>* warnings) {
  if (values.rows() == 0 || values.cols() == 0) {
    throw DomainError("cannot binarize an empty dataset");
  }
  if (!values.allFinite()) {
    throw DomainError("cannot binarize non-finite values");
  }
  Dataset out;
  out.points.resize(values.rows(), values.cols());
  if (mode == BinarizeMode::ElementWise) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      const Eigen::VectorXd column = values.col(j);
      Eigen::VectorXd result(values.rows());
      binarize_group(column, result, "feature " + std::to_string(j), warnings);
      out.points.col(j) = result;
    }
  } else {
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
      const Eigen::VectorXd row = values.row(i).transpose();
      Eigen::VectorXd result(values.cols());
      binarize_group(row, result, "sample " + std::to_string(i), warnings);
      out.points.row(i) = result.transpose();
    }
  }
  return out;
}

}  // namespace rbminit
