#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "rbminit/datasets.hpp"
#include "rbminit/errors.hpp"

using namespace rbminit;

TEST_CASE("toy base patterns") {
  const Eigen::MatrixXd p = toy_base_patterns(6);
  Eigen::MatrixXd want(4, 6);
  want << 1, 1, 1, 1, 1, 1,
      -1, -1, -1, -1, -1, -1,
      1, 1, 1, -1, -1, -1,
      -1, -1, -1, 1, 1, 1;
  CHECK(p == want);
  CHECK_THROWS_AS(toy_base_patterns(1), DomainError);
}

TEST_CASE("toy spec validation") {
  CHECK_THROWS_AS(gen_toy({1, 10, 0.1, 0}), DomainError);
  CHECK_THROWS_AS(gen_toy({4, 0, 0.1, 0}), DomainError);
  CHECK_THROWS_AS(gen_toy({4, 10, -0.1, 0}), DomainError);
  CHECK_THROWS_AS(gen_toy({4, 10, 1.5, 0}), DomainError);
}

TEST_CASE("flip probability 0 copies the patterns") {
  const Dataset data = gen_toy({10, 7, 0.0, 3});
  REQUIRE(data.size() == 28);
  CHECK(data.source == "toy");
  const Eigen::MatrixXd base = toy_base_patterns(10);
  for (int r = 0; r < data.size(); ++r) {
    CHECK(data.points.row(r) == base.row(r / 7));
  }
  const Dataset all = gen_toy({10, 7, 1.0, 3});
  for (int r = 0; r < all.size(); ++r) {
    CHECK(all.points.row(r) == -base.row(r / 7));
  }
}

TEST_CASE("flip rate and element means match the noise model") {
  const ToySpec spec{20, 2500, 0.15, 11};
  const Dataset data = gen_toy(spec);
  data.validate();
  const Eigen::MatrixXd base = toy_base_patterns(20);
  double flips = 0.0;
  for (int r = 0; r < data.size(); ++r) {
    flips += (data.points.row(r).array() != base.row(r / spec.per_pattern).array()).count();
  }
  const double cells = static_cast<double>(data.points.size());
  const double p = spec.flip_prob;
  CHECK(std::abs(flips / cells - p) < 3.0 * std::sqrt(p * (1 - p) / cells));

  // Per pattern and element, E[v] = (1 - 2p) * pattern value.
  const double sd = std::sqrt(1.0 - std::pow(1.0 - 2.0 * p, 2)) / std::sqrt(spec.per_pattern);
  int outliers = 0;
  for (int q = 0; q < 4; ++q) {
    const Eigen::RowVectorXd mean = data.points.middleRows(q * spec.per_pattern, spec.per_pattern).colwise().mean();
    for (int i = 0; i < 20; ++i) {
      outliers += std::abs(mean[i] - (1 - 2 * p) * base(q, i)) > 3.0 * sd ? 1 : 0;
    }
  }
  // 80 near-independent 3-sigma checks: a handful of exceedances would be suspicious.
  CHECK(outliers <= 2);
}

TEST_CASE("gen_toy is deterministic per seed") {
  CHECK(gen_toy({}).points == gen_toy({}).points);
  CHECK(gen_toy({20, 100, 0.15, 1}).points != gen_toy({}).points);
}

TEST_CASE("otsu separates two point masses") {
  std::vector<double> xs(50, 0.0);
  xs.insert(xs.end(), 50, 10.0);
  const double t = otsu_threshold(xs);
  CHECK(t > 0.0);
  CHECK(t < 10.0);
  CHECK(otsu_threshold(std::vector<double>{1.0, 2.0}) > 1.0);
  CHECK(otsu_threshold(std::vector<double>{1.0, 2.0}) < 2.0);
}

TEST_CASE("otsu on a balanced Gaussian mixture") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  std::vector<double> xs;
  for (int k = 0; k < 5000; ++k) {
    xs.push_back(normal(rng));
    xs.push_back(6.0 + normal(rng));
  }
  const double t = otsu_threshold(xs);
  CHECK(std::abs(t - 3.0) < 0.5);
  // The histogram version stays within a couple of bin widths of the exact split.
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  const double width = (*hi - *lo) / 256.0;
  CHECK(std::abs(t - oracle::exhaustive_otsu(xs)) < 3.0 * width);
}

TEST_CASE("otsu input errors") {
  CHECK_THROWS_AS(otsu_threshold(std::vector<double>{}), DomainError);
  CHECK_THROWS_AS(otsu_threshold(std::vector<double>{2.0, 2.0, 2.0}), DomainError);
  CHECK_THROWS_AS(otsu_threshold(std::vector<double>{1.0, NAN}), DomainError);
}

TEST_CASE("element-wise binarization") {
  Eigen::MatrixXd x(4, 2);
  x << 1, 100,
      2, -5,
      9, 100,
      10, -5;
  const Dataset d = binarize(x, BinarizeMode::ElementWise);
  Eigen::MatrixXd want(4, 2);
  want << -1, 1,
      -1, -1,
      1, 1,
      1, -1;
  CHECK(d.points == want);
}

TEST_CASE("point-wise binarization thresholds each row") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  Eigen::MatrixXd x(5, 12);
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    x(k) = u(rng);
  }
  const Dataset d = binarize(x, BinarizeMode::PointWise);
  for (int r = 0; r < 5; ++r) {
    const std::vector<double> row(x.row(r).begin(), x.row(r).end());
    const double t = otsu_threshold(row);
    for (int i = 0; i < 12; ++i) {
      CHECK(d.points(r, i) == (x(r, i) > t ? 1.0 : -1.0));
    }
  }
}

TEST_CASE("two-level features binarize without error") {
  std::mt19937_64 rng(9);
  std::bernoulli_distribution coin(0.4);
  std::normal_distribution<double> noise(0.0, 0.05);
  Eigen::MatrixXd x(300, 6);
  Eigen::MatrixXd truth(300, 6);
  for (int r = 0; r < 300; ++r) {
    for (int j = 0; j < 6; ++j) {
      const bool high = coin(rng);
      truth(r, j) = high ? 1.0 : -1.0;
      x(r, j) = (high ? 3.0 + j : -1.0 * j) + noise(rng);
    }
  }
  CHECK(binarize(x, BinarizeMode::ElementWise).points == truth);
}

TEST_CASE("constant groups map to -1 with a warning") {
  Eigen::MatrixXd x(3, 2);
  x << 4, 1,
      4, 2,
      4, 3;
  std::vector<std::string> warnings;
  const Dataset d = binarize(x, BinarizeMode::ElementWise, &warnings);
  CHECK(d.points.col(0).isConstant(-1.0));
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0] == "feature 0 is constant; mapped to -1");

  warnings.clear();
  Eigen::MatrixXd rows(2, 3);
  rows << 1, 2, 3,
      7, 7, 7;
  const Dataset p = binarize(rows, BinarizeMode::PointWise, &warnings);
  CHECK(p.points.row(1).isConstant(-1.0));
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0] == "sample 1 is constant; mapped to -1");
  CHECK_NOTHROW(binarize(rows, BinarizeMode::PointWise));
}

TEST_CASE("binarize output alphabet and errors") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd x(40, 7);
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    x(k) = normal(rng);
  }
  for (BinarizeMode mode : {BinarizeMode::ElementWise, BinarizeMode::PointWise}) {
    const Dataset d = binarize(x, mode);
    CHECK(d.points.rows() == 40);
    CHECK(d.points.cols() == 7);
    CHECK_NOTHROW(d.validate());
  }
  CHECK_THROWS_AS(binarize(Eigen::MatrixXd(0, 3), BinarizeMode::ElementWise), DomainError);
  x(2, 2) = INFINITY;
  CHECK_THROWS_AS(binarize(x, BinarizeMode::ElementWise), DomainError);
}
