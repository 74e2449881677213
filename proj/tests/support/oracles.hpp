#pragma once

// Independent reference computations used only by the tests. None of these
// reuse library numerics: integrals are adaptive Simpson, partition sums are
// brute-force joint enumeration with naive loops.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include "rbminit/rbm.hpp"

namespace oracle {

inline double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

namespace detail {

inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                           double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15.0 * tol) {
    return left + right + diff / 15.0;
  }
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-13, int max_depth = 50) {
  // A fixed pre-split keeps the recursion from being fooled by a flat start.
  constexpr int kPieces = 64;
  const double h = (b - a) / kPieces;
  double total = 0.0;
  for (int k = 0; k < kPieces; ++k) {
    const double lo = a + k * h;
    const double hi = lo + h;
    const double flo = f(lo);
    const double fmid = f(0.5 * (lo + hi));
    const double fhi = f(hi);
    const double whole = h / 6.0 * (flo + 4.0 * fmid + fhi);
    total += detail::simpson_step(f, lo, hi, flo, fmid, fhi, whole, tol / kPieces, max_depth);
  }
  return total;
}

/// E[f(z)] for z ~ N(0, 1), integrated on [-10, 10].
inline double gaussian_expectation(const std::function<double(double)>& f, double tol = 1e-13) {
  return adaptive_simpson([&](double z) { return f(z) * normal_pdf(z); }, -10.0, 10.0, tol);
}

/// (p - 1)!! for even p, 0 for odd p.
inline double gaussian_moment(int p) {
  if (p % 2 != 0) {
    return 0.0;
  }
  double out = 1.0;
  for (int k = p - 1; k > 1; k -= 2) {
    out *= k;
  }
  return out;
}

/// Bisection for a root of g on [lo, hi] (g(lo) and g(hi) of opposite sign).
inline double bisect(const std::function<double(double)>& g, double lo, double hi, double tol = 1e-14) {
  double glo = g(lo);
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if ((gm < 0.0) == (glo < 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// ------------------------------------------------------------------ RBM oracles

inline std::vector<double> hidden_values(rbminit::HiddenSpace hidden) {
  return hidden == rbminit::HiddenSpace::Ising ? std::vector<double>{-1.0, 1.0}
                                               : std::vector<double>{0.0, 1.0};
}

/// Every configuration of `count` units over `values`, as columns of a list.
inline std::vector<Eigen::VectorXd> all_states(int count, const std::vector<double>& values) {
  std::vector<Eigen::VectorXd> out;
  const long total = 1L << count;
  for (long s = 0; s < total; ++s) {
    Eigen::VectorXd x(count);
    for (int i = 0; i < count; ++i) {
      x[i] = ((s >> i) & 1) ? values[1] : values[0];
    }
    out.push_back(x);
  }
  return out;
}

/// b'v + c'h + v'Wh with explicit loops.
inline double naive_exponent(const rbminit::Rbm& rbm, const Eigen::VectorXd& v, const Eigen::VectorXd& h) {
  double s = 0.0;
  for (int i = 0; i < rbm.n(); ++i) {
    s += rbm.b[i] * v[i];
  }
  for (int j = 0; j < rbm.m(); ++j) {
    s += rbm.c[j] * h[j];
  }
  for (int i = 0; i < rbm.n(); ++i) {
    for (int j = 0; j < rbm.m(); ++j) {
      s += v[i] * rbm.w(i, j) * h[j];
    }
  }
  return s;
}

inline double log_sum_exp(const std::vector<double>& xs) {
  const double top = *std::max_element(xs.begin(), xs.end());
  double s = 0.0;
  for (double x : xs) {
    s += std::exp(x - top);
  }
  return top + std::log(s);
}

/// ln sum_h exp(exponent(v, h)) by enumerating hidden states.
inline double hidden_enumerated_log_unnorm(const rbminit::Rbm& rbm, const Eigen::VectorXd& v) {
  std::vector<double> terms;
  for (const auto& h : all_states(rbm.m(), hidden_values(rbm.hidden))) {
    terms.push_back(naive_exponent(rbm, v, h));
  }
  return log_sum_exp(terms);
}

/// ln Z over the full joint state space.
inline double joint_log_partition(const rbminit::Rbm& rbm) {
  std::vector<double> terms;
  const auto hs = all_states(rbm.m(), hidden_values(rbm.hidden));
  for (const auto& v : all_states(rbm.n(), {-1.0, 1.0})) {
    for (const auto& h : hs) {
      terms.push_back(naive_exponent(rbm, v, h));
    }
  }
  return log_sum_exp(terms);
}

struct JointMoments {
  double log_z = 0.0;
  Eigen::VectorXd v;
  Eigen::VectorXd h;
  Eigen::MatrixXd vh;
};

inline JointMoments joint_moments(const rbminit::Rbm& rbm) {
  JointMoments out;
  out.log_z = joint_log_partition(rbm);
  out.v = Eigen::VectorXd::Zero(rbm.n());
  out.h = Eigen::VectorXd::Zero(rbm.m());
  out.vh = Eigen::MatrixXd::Zero(rbm.n(), rbm.m());
  const auto hs = all_states(rbm.m(), hidden_values(rbm.hidden));
  for (const auto& v : all_states(rbm.n(), {-1.0, 1.0})) {
    for (const auto& h : hs) {
      const double p = std::exp(naive_exponent(rbm, v, h) - out.log_z);
      out.v += p * v;
      out.h += p * h;
      out.vh += p * v * h.transpose();
    }
  }
  return out;
}

/// (1/N) sum_mu ln P(v^mu) from the joint enumeration.
inline double joint_log_likelihood(const rbminit::Rbm& rbm, const Eigen::MatrixXd& points) {
  const double log_z = joint_log_partition(rbm);
  double s = 0.0;
  for (Eigen::Index r = 0; r < points.rows(); ++r) {
    s += hidden_enumerated_log_unnorm(rbm, points.row(r).transpose()) - log_z;
  }
  return s / static_cast<double>(points.rows());
}

/// Threshold maximizing the between-class variance over every split of the
/// sorted raw sample (midpoints between consecutive distinct values).
inline double exhaustive_otsu(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double total = 0.0;
  for (double x : xs) {
    total += x;
  }
  double best = -1.0;
  double threshold = xs.front();
  double left = 0.0;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    left += xs[k];
    if (xs[k + 1] == xs[k]) {
      continue;
    }
    const double w0 = static_cast<double>(k + 1);
    const double w1 = n - w0;
    const double gap = left / w0 - (total - left) / w1;
    const double sigma = w0 * w1 * gap * gap;
    if (sigma > best) {
      best = sigma;
      threshold = 0.5 * (xs[k] + xs[k + 1]);
    }
  }
  return threshold;
}

}  // namespace oracle
