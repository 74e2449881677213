#include <cmath>
#include <map>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "rbminit/errors.hpp"
#include "rbminit/rbm.hpp"

using namespace rbminit;

namespace {

constexpr HiddenSpace kSpaces[] = {HiddenSpace::Ising, HiddenSpace::Binary};

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) {
    v[i++] = x;
  }
  return v;
}

}  // namespace

TEST_CASE("construction and validation") {
  CHECK_THROWS_AS(Rbm(0, 3, HiddenSpace::Ising), DimensionError);
  Rbm rbm(2, 3, HiddenSpace::Binary);
  CHECK(rbm.n() == 2);
  CHECK(rbm.m() == 3);
  CHECK(rbm.w.isZero());
  rbm.w(0, 0) = NAN;
  CHECK_THROWS_AS(rbm.validate(), DomainError);
  rbm.w.resize(3, 3);
  CHECK_THROWS_AS(rbm.validate(), DimensionError);
}

TEST_CASE("dataset alphabet") {
  Dataset d;
  d.points = Eigen::MatrixXd::Ones(2, 3);
  CHECK_NOTHROW(d.validate());
  d.points(1, 2) = 0.0;
  CHECK_THROWS_AS(d.validate(), DomainError);
  d.points(1, 2) = -1.0;
  const std::vector<int> pick{1, 1, 0};
  const Dataset sub = d.rows(pick);
  CHECK(sub.size() == 3);
  CHECK(sub.points(0, 2) == -1.0);
}

TEST_CASE("negative log unnormalized probability") {
  CHECK(neg_log_unnorm(Rbm(2, 2, HiddenSpace::Ising), vec({1, -1}), vec({1, 1})) == 0.0);
  Rbm one(1, 1, HiddenSpace::Ising);
  one.b[0] = one.c[0] = one.w(0, 0) = 1.0;
  CHECK(neg_log_unnorm(one, vec({1}), vec({1})) == -3.0);

  for (HiddenSpace hs : kSpaces) {
    const Rbm rbm = fixture::random_rbm(3, 2, hs, 0.8, 5);
    for (const auto& v : oracle::all_states(3, {-1.0, 1.0})) {
      for (const auto& h : oracle::all_states(2, oracle::hidden_values(hs))) {
        CHECK(std::abs(neg_log_unnorm(rbm, v, h) + oracle::naive_exponent(rbm, v, h)) < 1e-13);
      }
    }
  }
}

TEST_CASE("state checks") {
  const Rbm rbm(2, 2, HiddenSpace::Binary);
  CHECK_THROWS_AS(neg_log_unnorm(rbm, vec({1}), vec({0, 1})), DimensionError);
  CHECK_THROWS_AS(neg_log_unnorm(rbm, vec({1, 0}), vec({0, 1})), DimensionError);
  CHECK_THROWS_AS(neg_log_unnorm(rbm, vec({1, 1}), vec({-1, 1})), DimensionError);
  CHECK_THROWS_AS(visible_log_unnorm(rbm, vec({1, 1, 1})), DimensionError);
  CHECK_THROWS_AS(visible_conditional(rbm, vec({1})), DimensionError);
}

TEST_CASE("visible log unnormalized probability") {
  for (HiddenSpace hs : kSpaces) {
    CHECK(std::abs(visible_log_unnorm(Rbm(2, 3, hs), vec({1, -1})) - 3.0 * std::log(2.0)) < 1e-15);
    const Rbm rbm = fixture::random_rbm(4, 3, hs, 1.0, 17);
    for (const auto& v : oracle::all_states(4, {-1.0, 1.0})) {
      CHECK(std::abs(visible_log_unnorm(rbm, v) - oracle::hidden_enumerated_log_unnorm(rbm, v)) < 1e-12);
    }
  }
}

TEST_CASE("visible log unnormalized probability is overflow free") {
  for (HiddenSpace hs : kSpaces) {
    Rbm rbm(1, 2, hs);
    rbm.w(0, 0) = 1e4;
    rbm.w(0, 1) = -1e4;
    const double up = visible_log_unnorm(rbm, vec({1}));
    CHECK(std::isfinite(up));
    // One field is +1e4 and the other -1e4.
    const double want = hs == HiddenSpace::Ising ? 2e4 : 1e4;
    CHECK(std::abs(up - want) < 1e-9);
  }
}

TEST_CASE("exact log partition") {
  for (HiddenSpace hs : kSpaces) {
    CHECK(std::abs(log_partition_exact(Rbm(3, 4, hs)) - 7.0 * std::log(2.0)) < 1e-12);
  }
  Rbm one(1, 1, HiddenSpace::Ising);
  one.w(0, 0) = 0.7;
  CHECK(std::abs(log_partition_exact(one) - std::log(4.0 * std::cosh(0.7))) < 1e-14);

  for (HiddenSpace hs : kSpaces) {
    for (auto [n, m] : {std::pair{2, 2}, std::pair{5, 3}, std::pair{10, 6}, std::pair{13, 4}}) {
      for (double scale : {0.3, 2.0, 60.0}) {
        const Rbm rbm = fixture::random_rbm(n, m, hs, scale, static_cast<std::uint64_t>(n * 100 + m));
        const double exact = log_partition_exact(rbm);
        CAPTURE(n);
        CAPTURE(m);
        CAPTURE(scale);
        if (n + m <= 16) {
          CHECK(std::abs(exact - oracle::joint_log_partition(rbm)) < 1e-9 * std::max(1.0, std::abs(exact)));
        }
        // Sum of exp(visible_log_unnorm) over all visible states.
        std::vector<double> terms;
        for (const auto& v : oracle::all_states(n, {-1.0, 1.0})) {
          terms.push_back(visible_log_unnorm(rbm, v));
        }
        CHECK(std::abs(exact - oracle::log_sum_exp(terms)) < 1e-9 * std::max(1.0, std::abs(exact)));
      }
    }
  }
  CHECK_THROWS_AS(log_partition_exact(Rbm(26, 1, HiddenSpace::Ising)), EnumerationCapError);
}

TEST_CASE("exact model expectations match joint enumeration") {
  for (HiddenSpace hs : kSpaces) {
    for (auto [n, m] : {std::pair{1, 1}, std::pair{4, 3}, std::pair{12, 3}, std::pair{13, 2}}) {
      for (double scale : {0.5, 40.0}) {
        const Rbm rbm = fixture::random_rbm(n, m, hs, scale, static_cast<std::uint64_t>(7 * n + m));
        const ModelExpectations got = exact_model_expectations(rbm);
        const oracle::JointMoments want = oracle::joint_moments(rbm);
        CAPTURE(n);
        CAPTURE(scale);
        CHECK(std::abs(got.log_z - want.log_z) < 1e-9 * std::max(1.0, std::abs(want.log_z)));
        CHECK((got.v - want.v).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((got.h - want.h).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((got.vh - want.vh).cwiseAbs().maxCoeff() < 1e-10);
      }
    }
  }
}

TEST_CASE("conditionals") {
  for (HiddenSpace hs : kSpaces) {
    const Rbm zero(3, 2, hs);
    CHECK(hidden_conditional(zero, vec({1, -1, 1})).isApproxToConstant(0.5));
    const Eigen::VectorXd h0 = hs == HiddenSpace::Ising ? vec({1, -1}) : vec({1, 0});
    CHECK(visible_conditional(zero, h0).isApproxToConstant(0.5));

    Rbm one(1, 1, hs);
    double last = 0.0;
    for (double c : {0.0, 1.0, 5.0, 20.0, 200.0}) {
      one.c[0] = c;
      const double p = hidden_conditional(one, vec({1}))[0];
      CHECK(p >= last);
      CHECK(p <= 1.0);
      last = p;
    }
    CHECK(last == doctest::Approx(1.0));

    // Joint-enumeration oracle: P(h_j = top | v) and P(v_i = 1 | h).
    const Rbm rbm = fixture::random_rbm(3, 2, hs, 1.0, 9);
    const auto values = oracle::hidden_values(hs);
    for (const auto& v : oracle::all_states(3, {-1.0, 1.0})) {
      const Eigen::VectorXd p = hidden_conditional(rbm, v);
      for (int j = 0; j < 2; ++j) {
        double top = 0.0;
        double all = 0.0;
        for (const auto& h : oracle::all_states(2, values)) {
          const double w = std::exp(oracle::naive_exponent(rbm, v, h));
          all += w;
          if (h[j] == values[1]) {
            top += w;
          }
        }
        CHECK(std::abs(p[j] - top / all) < 1e-13);
      }
    }
    for (const auto& h : oracle::all_states(2, values)) {
      const Eigen::VectorXd p = visible_conditional(rbm, h);
      for (int i = 0; i < 3; ++i) {
        double top = 0.0;
        double all = 0.0;
        for (const auto& v : oracle::all_states(3, {-1.0, 1.0})) {
          const double w = std::exp(oracle::naive_exponent(rbm, v, h));
          all += w;
          if (v[i] == 1.0) {
            top += w;
          }
        }
        CHECK(std::abs(p[i] - top / all) < 1e-13);
      }
    }
  }
}

TEST_CASE("hidden means agree with conditionals") {
  for (HiddenSpace hs : kSpaces) {
    const Rbm rbm = fixture::random_rbm(4, 3, hs, 1.5, 3);
    const Dataset data = fixture::random_dataset(5, 4, 1);
    const Eigen::MatrixXd means = hidden_means(rbm, data.points);
    for (int r = 0; r < 5; ++r) {
      const Eigen::VectorXd p = hidden_conditional(rbm, data.points.row(r).transpose());
      const Eigen::VectorXd want = hs == HiddenSpace::Ising ? Eigen::VectorXd(2.0 * p.array() - 1.0) : p;
      CHECK((means.row(r).transpose() - want).cwiseAbs().maxCoeff() < 1e-14);
    }
  }
}

TEST_CASE("gibbs sweeps are deterministic per stream") {
  const Rbm rbm = fixture::random_rbm(5, 4, HiddenSpace::Binary, 1.0, 2);
  Rng a = make_stream(42, 7);
  Rng b = make_stream(42, 7);
  Eigen::VectorXd va = random_visible(5, a);
  Eigen::VectorXd vb = random_visible(5, b);
  for (int s = 0; s < 50; ++s) {
    const GibbsState sa = gibbs_sweep(rbm, va, a);
    const GibbsState sb = gibbs_sweep(rbm, vb, b);
    CHECK(sa.v == sb.v);
    CHECK(sa.h == sb.h);
    for (double x : sa.h) {
      CHECK((x == 0.0 || x == 1.0));
    }
    va = sa.v;
    vb = sb.v;
  }
}

TEST_CASE("zero-parameter sweeps give uniform visible states") {
  const Rbm rbm(3, 2, HiddenSpace::Ising);
  Rng rng = make_stream(1, 0);
  Eigen::VectorXd v = random_visible(3, rng);
  std::vector<double> counts(8, 0.0);
  constexpr int kSweeps = 10000;
  for (int s = 0; s < kSweeps; ++s) {
    v = gibbs_sweep(rbm, v, rng).v;
    int code = 0;
    for (int i = 0; i < 3; ++i) {
      code |= (v[i] > 0 ? 1 : 0) << i;
    }
    counts[code] += 1.0;
  }
  double chi2 = 0.0;
  for (double c : counts) {
    chi2 += (c - kSweeps / 8.0) * (c - kSweeps / 8.0) / (kSweeps / 8.0);
  }
  // 7 degrees of freedom; 24.3 is the 0.999 quantile.
  CHECK(chi2 < 24.3);
}

TEST_CASE("gibbs chain reaches the exact marginal") {
  for (HiddenSpace hs : kSpaces) {
    const Rbm rbm = fixture::random_rbm(2, 2, hs, 0.8, 4);
    const double log_z = log_partition_exact(rbm);
    Rng rng = make_stream(3, 0);
    Eigen::VectorXd v = random_visible(2, rng);
    std::vector<double> counts(4, 0.0);
    constexpr int kSweeps = 1000000;
    for (int s = 0; s < kSweeps; ++s) {
      v = gibbs_sweep(rbm, v, rng).v;
      counts[(v[0] > 0 ? 1 : 0) + (v[1] > 0 ? 2 : 0)] += 1.0;
    }
    double tv = 0.0;
    int code = 0;
    for (const auto& state : oracle::all_states(2, {-1.0, 1.0})) {
      const double p = std::exp(visible_log_unnorm(rbm, state) - log_z);
      tv += std::abs(p - counts[code++] / kSweeps);
    }
    CHECK(0.5 * tv < 0.01);
  }
}

TEST_CASE("streams are independent of how many exist") {
  Rng a = make_stream(5, 3);
  Rng b = make_stream(5, 3);
  Rng c = make_stream(5, 4);
  Rng d = make_stream(6, 3);
  const auto x = a();
  CHECK(x == b());
  CHECK(x != c());
  CHECK(x != d());
}
