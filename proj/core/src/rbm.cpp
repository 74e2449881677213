#include "rbminit/rbm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "rbminit/errors.hpp"
#include "rbminit/numerics.hpp"

namespace rbminit {
namespace {

using Array = Eigen::ArrayXXd;

bool is_spin(double x) { return x == 1.0 || x == -1.0; }

void check_visible(const Rbm& rbm, const Eigen::VectorXd& v) {
  if (v.size() != rbm.n()) {
    throw DimensionError("visible state has " + std::to_string(v.size()) + " entries, expected " +
                         std::to_string(rbm.n()));
  }
  for (double x : v) {
    if (!is_spin(x)) {
      throw DimensionError("visible state entries must be -1 or +1");
    }
  }
}

void check_hidden(const Rbm& rbm, const Eigen::VectorXd& h) {
  if (h.size() != rbm.m()) {
    throw DimensionError("hidden state has " + std::to_string(h.size()) + " entries, expected " +
                         std::to_string(rbm.m()));
  }
  for (double x : h) {
    const bool ok = rbm.hidden == HiddenSpace::Ising ? is_spin(x) : (x == 0.0 || x == 1.0);
    if (!ok) {
      throw DimensionError("hidden state entry outside the hidden sample space");
    }
  }
}

// Stable per-element pieces of the hidden free energy g(a) and mean E[h|a].
//   Ising:  g = |a| + ln(1 + e),  e = exp(-2|a|),  mean = sign(a)(1 - e)/(1 + e)
//   Binary: g = max(a,0) + ln(1 + e),  e = exp(-|a|),  mean = sig(a)
struct HiddenTerms {
  Array linear;     // |a| or max(a, 0)
  Array one_plus_e; // 1 + e
  Array e;
};

HiddenTerms hidden_terms(HiddenSpace hidden, const Array& a) {
  HiddenTerms t;
  if (hidden == HiddenSpace::Ising) {
    t.linear = a.abs();
    t.e = (-2.0 * t.linear).exp();
  } else {
    t.linear = a.max(0.0);
    t.e = (-a.abs()).exp();
  }
  t.one_plus_e = 1.0 + t.e;
  return t;
}

// Row sums of g(a). ln(1+e) terms are combined through one log of a product;
// each factor lies in (1, 2], so the product of up to 1000 factors is finite.
Eigen::ArrayXd hidden_log_sums(const HiddenTerms& t) {
  Eigen::ArrayXd out = t.linear.rowwise().sum();
  const Eigen::Index m = t.e.cols();
  constexpr Eigen::Index kChunk = 1000;
  for (Eigen::Index j = 0; j < m; j += kChunk) {
    const Eigen::Index width = std::min(kChunk, m - j);
    out += t.one_plus_e.middleCols(j, width).rowwise().prod().log();
  }
  return out;
}

Array hidden_mean_terms(HiddenSpace hidden, const Array& a, const HiddenTerms& t) {
  if (hidden == HiddenSpace::Ising) {
    return a.sign() * (1.0 - t.e) / t.one_plus_e;
  }
  return (a >= 0.0).select(1.0 / t.one_plus_e, t.e / t.one_plus_e);
}

// All 2^bits spin states as rows; bit i of the row index is unit i.
Eigen::MatrixXd spin_table(int bits) {
  const Eigen::Index rows = Eigen::Index{1} << bits;
  Eigen::MatrixXd table(rows, bits);
  for (Eigen::Index s = 0; s < rows; ++s) {
    for (int i = 0; i < bits; ++i) {
      table(s, i) = ((s >> i) & 1) ? 1.0 : -1.0;
    }
  }
  return table;
}

void check_cap(const Rbm& rbm) {
  if (rbm.n() > kExactVisibleCap) {
    throw EnumerationCapError(rbm.n(), kExactVisibleCap);
  }
}

}  // namespace

Rbm::Rbm(int n, int m, HiddenSpace hidden_space)
    : hidden(hidden_space),
      b(Eigen::VectorXd::Zero(n)),
      c(Eigen::VectorXd::Zero(m)),
      w(Eigen::MatrixXd::Zero(n, m)) {
  if (n < 1 || m < 1) {
    throw DimensionError("RBM layers must have at least one unit");
  }
}

void Rbm::validate() const {
  if (n() < 1 || m() < 1 || w.rows() != n() || w.cols() != m()) {
    throw DimensionError("RBM parameter shapes are inconsistent");
  }
  if (!b.allFinite() || !c.allFinite() || !w.allFinite()) {
    throw DomainError("RBM parameters must be finite");
  }
}

void Dataset::validate() const {
  for (Eigen::Index i = 0; i < points.size(); ++i) {
    if (!is_spin(points.data()[i])) {
      throw DomainError("dataset entries must be exactly -1 or +1");
    }
  }
}

Dataset Dataset::rows(std::span<const int> indices) const {
  Dataset out;
  out.source = source;
  out.points.resize(static_cast<Eigen::Index>(indices.size()), points.cols());
  for (std::size_t k = 0; k < indices.size(); ++k) {
    out.points.row(static_cast<Eigen::Index>(k)) = points.row(indices[k]);
  }
  return out;
}

double neg_log_unnorm(const Rbm& rbm, const Eigen::VectorXd& v, const Eigen::VectorXd& h) {
  check_visible(rbm, v);
  check_hidden(rbm, h);
  return -(rbm.b.dot(v) + rbm.c.dot(h) + v.dot(rbm.w * h));
}

double visible_log_unnorm(const Rbm& rbm, const Eigen::VectorXd& v) {
  check_visible(rbm, v);
  Eigen::MatrixXd states = v.transpose();
  return visible_log_unnorm(rbm, states)[0];
}

Eigen::VectorXd visible_log_unnorm(const Rbm& rbm, const Eigen::MatrixXd& states) {
  if (states.cols() != rbm.n()) {
    throw DimensionError("state matrix has the wrong number of columns");
  }
  const Array a = ((states * rbm.w).rowwise() + rbm.c.transpose()).array();
  const HiddenTerms t = hidden_terms(rbm.hidden, a);
  return (states * rbm.b).array() + hidden_log_sums(t);
}

Eigen::MatrixXd hidden_means(const Rbm& rbm, const Eigen::MatrixXd& states) {
  if (states.cols() != rbm.n()) {
    throw DimensionError("state matrix has the wrong number of columns");
  }
  const Array a = ((states * rbm.w).rowwise() + rbm.c.transpose()).array();
  return hidden_mean_terms(rbm.hidden, a, hidden_terms(rbm.hidden, a)).matrix();
}

Eigen::VectorXd hidden_conditional(const Rbm& rbm, const Eigen::VectorXd& v) {
  check_visible(rbm, v);
  const Eigen::VectorXd a = rbm.c + rbm.w.transpose() * v;
  const double gain = rbm.hidden == HiddenSpace::Ising ? 2.0 : 1.0;
  return a.unaryExpr([gain](double x) { return sigmoid(gain * x); });
}

Eigen::VectorXd visible_conditional(const Rbm& rbm, const Eigen::VectorXd& h) {
  check_hidden(rbm, h);
  const Eigen::VectorXd a = rbm.b + rbm.w * h;
  return a.unaryExpr([](double x) { return sigmoid(2.0 * x); });
}

Eigen::VectorXd random_visible(int n, Rng& rng) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) {
    v[i] = uniform01(rng) < 0.5 ? 1.0 : -1.0;
  }
  return v;
}

GibbsState gibbs_sweep(const Rbm& rbm, const Eigen::VectorXd& v, Rng& rng) {
  const Eigen::VectorXd ph = hidden_conditional(rbm, v);
  const double off = rbm.hidden == HiddenSpace::Ising ? -1.0 : 0.0;
  GibbsState out;
  out.h.resize(rbm.m());
  for (int j = 0; j < rbm.m(); ++j) {
    out.h[j] = uniform01(rng) < ph[j] ? 1.0 : off;
  }
  const Eigen::VectorXd pv = visible_conditional(rbm, out.h);
  out.v.resize(rbm.n());
  for (int i = 0; i < rbm.n(); ++i) {
    out.v[i] = uniform01(rng) < pv[i] ? 1.0 : -1.0;
  }
  return out;
}

namespace {

// Visible enumeration split into low bits (a 2^L row table) and high bits
// (one block per high pattern), so each block is a broadcast over a fixed
// table. Accumulators are kept relative to a running log-scale `shift` and
// rescaled when a block raises it. Low-bit moments are accumulated per table
// row and contracted with the table once at the end.
//
// With e = exp(k a) (k = 2 Ising, 1 binary) and r = 1/(1 + e):
//   Ising:  g(a) = -a - ln r,  mean = 1 - 2r
//   Binary: g(a) =    - ln r,  mean = 1 - r
// When every column's field is bounded well inside the exponent range, e
// factorizes into exp(k a_low) * exp(k a_high) and a block needs no
// transcendental calls apart from one log per row and column chunk.
struct Factorization {
  bool usable = false;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> chunks;  // [start, width)
};

Factorization plan_factorization(const Rbm& rbm) {
  constexpr double kChunkBudget = 600.0;
  const double k = rbm.hidden == HiddenSpace::Ising ? 2.0 : 1.0;
  const Eigen::ArrayXd bound =
      k * (rbm.c.array().abs() + rbm.w.array().abs().colwise().sum().transpose());
  Factorization f;
  Eigen::Index start = 0;
  double used = 0.0;
  for (Eigen::Index j = 0; j < rbm.m(); ++j) {
    // ln(1 + e) <= ln 2 + bound, so a chunk's product stays finite.
    const double cost = bound[j] + 1.0;
    if (cost > kChunkBudget) {
      return f;
    }
    if (used + cost > kChunkBudget) {
      f.chunks.emplace_back(start, j - start);
      start = j;
      used = 0.0;
    }
    used += cost;
  }
  f.chunks.emplace_back(start, rbm.m() - start);
  f.usable = true;
  return f;
}

template <bool kMoments>
ModelExpectations enumerate(const Rbm& rbm) {
  rbm.validate();
  check_cap(rbm);
  const int n = rbm.n();
  const int m = rbm.m();
  const int low_bits = std::min(n, 11);
  const int high_bits = n - low_bits;
  const bool ising = rbm.hidden == HiddenSpace::Ising;
  const double k = ising ? 2.0 : 1.0;
  const double mean_scale = ising ? 2.0 : 1.0;

  const Eigen::MatrixXd low = spin_table(low_bits);
  const Eigen::MatrixXd high = spin_table(high_bits);
  const Eigen::Index rows = low.rows();
  const Eigen::MatrixXd a_low = low * rbm.w.topRows(low_bits);
  Eigen::MatrixXd a_high = high * rbm.w.bottomRows(high_bits);
  a_high.rowwise() += rbm.c.transpose();
  const Eigen::ArrayXd bias_low = (low * rbm.b.head(low_bits)).array();
  const Eigen::VectorXd bias_high = high * rbm.b.tail(high_bits);

  const Factorization plan = plan_factorization(rbm);
  Array exp_low;
  Array exp_high;
  Eigen::ArrayXd linear_low;
  Eigen::ArrayXd linear_high;
  if (plan.usable) {
    exp_low = (k * a_low.array()).exp();
    exp_high = (k * a_high.array()).exp();
    linear_low = ising ? Eigen::ArrayXd(-a_low.rowwise().sum().array()) : Eigen::ArrayXd::Zero(rows);
    linear_high = ising ? Eigen::ArrayXd(-a_high.rowwise().sum().array())
                        : Eigen::ArrayXd::Zero(high.rows());
  }

  double shift = -std::numeric_limits<double>::infinity();
  double mass = 0.0;
  Eigen::ArrayXd p_low = Eigen::ArrayXd::Zero(rows);
  Array q_low;
  Eigen::VectorXd ev_high = Eigen::VectorXd::Zero(high_bits);
  Eigen::MatrixXd evh_high = Eigen::MatrixXd::Zero(high_bits, m);
  if constexpr (kMoments) {
    q_low = Array::Zero(rows, m);
  }

  Array a(rows, m);
  Array r(rows, m);
  Array mean(rows, m);
  Eigen::ArrayXd prod(rows);
  Eigen::ArrayXd lu(rows);
  Eigen::ArrayXd p(rows);
  for (Eigen::Index hi = 0; hi < high.rows(); ++hi) {
    if (plan.usable) {
      // r = 1/(1 + e), column by column so each pass streams contiguous memory.
      lu = bias_low + (bias_high[hi] + linear_high[hi]) + linear_low;
      for (const auto& [start, width] : plan.chunks) {
        prod.setOnes();
        for (Eigen::Index j = start; j < start + width; ++j) {
          if constexpr (kMoments) {
            r.col(j) = 1.0 / (1.0 + exp_low.col(j) * exp_high(hi, j));
            prod *= r.col(j);
          } else {
            prod *= 1.0 + exp_low.col(j) * exp_high(hi, j);
          }
        }
        if constexpr (kMoments) {
          lu -= prod.log();
        } else {
          lu += prod.log();
        }
      }
    } else {
      a = a_low.array().rowwise() + a_high.row(hi).array();
      const HiddenTerms t = hidden_terms(rbm.hidden, a);
      lu = bias_low + bias_high[hi] + hidden_log_sums(t);
      if constexpr (kMoments) {
        mean = hidden_mean_terms(rbm.hidden, a, t);
      }
    }

    const double block_max = lu.maxCoeff();
    if (block_max > shift) {
      const double scale = std::isfinite(shift) ? std::exp(shift - block_max) : 0.0;
      mass *= scale;
      if constexpr (kMoments) {
        p_low *= scale;
        q_low *= scale;
        ev_high *= scale;
        evh_high *= scale;
      }
      shift = block_max;
    }
    p = (lu - shift).exp();
    const double block_mass = p.sum();
    mass += block_mass;

    if constexpr (kMoments) {
      p_low += p;
      if (plan.usable) {
        // E[h] terms are p (1 - t r) with t = 2 (Ising) or 1; accumulate p r.
        const Eigen::VectorXd rp = r.matrix().transpose() * p.matrix();
        q_low += r.colwise() * p;
        if (high_bits > 0) {
          const Eigen::RowVectorXd pm =
              (block_mass - mean_scale * rp.array()).matrix().transpose();
          evh_high.noalias() += high.row(hi).transpose() * pm;
        }
      } else {
        mean.colwise() *= p;
        q_low += mean;
        if (high_bits > 0) {
          evh_high.noalias() += high.row(hi).transpose() * mean.colwise().sum().matrix();
        }
      }
      if (high_bits > 0) {
        ev_high += block_mass * high.row(hi).transpose();
      }
    }
  }

  if constexpr (kMoments) {
    if (plan.usable) {
      q_low = (-mean_scale * q_low).colwise() + p_low;
    }
  }

  ModelExpectations out;
  out.log_z = shift + std::log(mass);
  if constexpr (kMoments) {
    out.v.resize(n);
    out.v.head(low_bits) = low.transpose() * p_low.matrix() / mass;
    out.v.tail(high_bits) = ev_high / mass;
    out.h = q_low.colwise().sum().transpose().matrix() / mass;
    out.vh.resize(n, m);
    out.vh.topRows(low_bits) = low.transpose() * q_low.matrix() / mass;
    out.vh.bottomRows(high_bits) = evh_high / mass;
  }
  return out;
}

}  // namespace

double log_partition_exact(const Rbm& rbm) { return enumerate<false>(rbm).log_z; }

ModelExpectations exact_model_expectations(const Rbm& rbm) { return enumerate<true>(rbm); }

}  // namespace rbminit
