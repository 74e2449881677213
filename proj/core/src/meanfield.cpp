#include "rbminit/meanfield.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "rbminit/errors.hpp"
#include "rbminit/numerics.hpp"
#include "rbminit/optimize.hpp"

namespace rbminit {
namespace {

// Effective field of one unit: offset + scale * z, squashed by tanh (+-1
// units) or the logistic function ({0,1} units).
struct LayerField {
  double offset = 0.0;
  double scale = 0.0;
  bool logistic = false;

  double first(double z) const {
    const double x = offset + scale * z;
    return logistic ? sigmoid(x) : std::tanh(x);
  }
  // E^(2): h^2 = h for {0,1} units, v^2 = 1 for +-1 units.
  double second(double e1) const { return logistic ? e1 : 1.0; }
};

LayerField layer_field(const ModelConfig& config, Layer layer, double qhat) {
  const double scale = std::sqrt(std::max(qhat, 0.0));
  if (layer == Layer::Visible) {
    return {config.b, scale, false};
  }
  if (config.hidden == HiddenSpace::Ising) {
    return {config.c, scale, false};
  }
  const double shift = config.beta * config.beta / (2.0 * (1.0 + config.alpha)) - 0.5 * qhat;
  return {config.c + shift, scale, true};
}

double qhat_of(const SaddlePoint& saddle, Layer layer) {
  return layer == Layer::Visible ? saddle.qhat_v : saddle.qhat_h;
}

void validate_options(const SolverOptions& options) {
  if (!(options.damping > 0.0 && options.damping <= 1.0)) {
    throw DomainError("solver damping must lie in (0, 1]");
  }
  if (!(options.tolerance > 0.0) || options.max_iterations < 1) {
    throw DomainError("solver tolerance and iteration cap must be positive");
  }
}

}  // namespace

void ModelConfig::validate() const {
  if (!(std::isfinite(alpha) && alpha > 0.0)) {
    throw DomainError("alpha must be a positive finite number");
  }
  if (!(std::isfinite(beta) && beta >= 0.0)) {
    throw DomainError("beta must be a nonnegative finite number");
  }
  if (!std::isfinite(b) || !std::isfinite(c)) {
    throw DomainError("biases must be finite");
  }
}

double conditional_moment(const ModelConfig& config, Layer layer, const SaddlePoint& saddle,
                          double z, int r) {
  if (r < 1) {
    throw DomainError("moment order must be >= 1");
  }
  const LayerField field = layer_field(config, layer, qhat_of(saddle, layer));
  const double e1 = field.first(z);
  if (field.logistic) {
    return e1;
  }
  return r % 2 == 1 ? e1 : 1.0;
}

SaddlePoint with_auxiliary_fields(const ModelConfig& config, double q_v, double q_h) {
  const double scale = config.beta * config.beta / (1.0 + config.alpha);
  SaddlePoint s;
  s.q_v = q_v;
  s.q_h = q_h;
  s.qhat_v = scale * config.alpha * q_h;
  s.qhat_h = scale * q_v;
  return s;
}

std::pair<double, double> order_parameter_map(const ModelConfig& config, const SaddlePoint& saddle,
                                              const QuadratureRule& rule) {
  const LayerField fv = layer_field(config, Layer::Visible, saddle.qhat_v);
  const LayerField fh = layer_field(config, Layer::Hidden, saddle.qhat_h);
  const auto z = rule.bulk_nodes();
  const auto w = rule.bulk_weights();
  double q_v = 0.0;
  double q_h = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double ev = fv.first(z[i]);
    const double eh = fh.first(z[i]);
    q_v += w[i] * ev * ev;
    q_h += w[i] * eh * eh;
  }
  return {q_v, q_h};
}

namespace {

SaddlePoint iterate_saddle(const ModelConfig& config, const QuadratureRule& rule,
                           const SolverOptions& options, double q_v, double q_h) {
  double residual = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= options.max_iterations; ++it) {
    const SaddlePoint current = with_auxiliary_fields(config, q_v, q_h);
    const auto [next_v, next_h] = order_parameter_map(config, current, rule);
    residual = std::max(std::abs(next_v - q_v), std::abs(next_h - q_h));
    if (!std::isfinite(residual)) {
      break;
    }
    if (residual <= options.tolerance) {
      SaddlePoint out = with_auxiliary_fields(config, next_v, next_h);
      out.residual = residual;
      out.iterations = it;
      return out;
    }
    q_v += options.damping * (next_v - q_v);
    q_h += options.damping * (next_h - q_h);
  }
  throw ConvergenceError(config.beta, q_v, q_h, residual, options.max_iterations);
}

}  // namespace

SaddlePoint solve_saddle_point(const ModelConfig& config, const QuadratureRule& rule,
                               const SolverOptions& options) {
  config.validate();
  validate_options(options);
  return iterate_saddle(config, rule, options, options.initial_q, options.initial_q);
}

double free_energy(const ModelConfig& config, const SaddlePoint& s, const QuadratureRule& rule) {
  const double a = config.alpha;
  const double k = 1.0 + a;
  const double b2 = config.beta * config.beta;
  const double sv = std::sqrt(std::max(s.qhat_v, 0.0));
  const double sh = std::sqrt(std::max(s.qhat_h, 0.0));
  // -E_h(h, z) = (c + z sh) h + (beta^2/(1+alpha) - qhat_h) h^2 / 2
  const double quad = 0.5 * (b2 / k - s.qhat_h);

  const double log_sum_v =
      gaussian_integrate(rule, [&](double z) { return log_two_cosh(config.b + sv * z); });
  const double log_sum_h = gaussian_integrate(rule, [&](double z) {
    const double x = config.c + sh * z;
    return config.hidden == HiddenSpace::Ising ? log_two_cosh(x) + quad : softplus(x + quad);
  });

  return a * b2 * s.q_v * s.q_h / (2.0 * k * k) - s.qhat_v * (s.q_v - 1.0) / (2.0 * k) -
         a * s.qhat_h * s.q_h / (2.0 * k) - log_sum_v / k - a * log_sum_h / k;
}

Magnetizations magnetizations(const ModelConfig& config, const SaddlePoint& saddle,
                              const QuadratureRule& rule) {
  const LayerField fv = layer_field(config, Layer::Visible, saddle.qhat_v);
  const LayerField fh = layer_field(config, Layer::Hidden, saddle.qhat_h);
  const double k = 1.0 + config.alpha;
  return {gaussian_integrate(rule, [&](double z) { return fv.first(z); }) / k,
          config.alpha * gaussian_integrate(rule, [&](double z) { return fh.first(z); }) / k};
}

double beta_critical(double alpha) {
  if (!(std::isfinite(alpha) && alpha > 0.0)) {
    throw DomainError("beta_critical requires alpha > 0");
  }
  const double r = std::sqrt(alpha);
  return std::sqrt(r + 1.0 / r);
}

MomentIntegrals moment_integrals(const ModelConfig& config, Layer layer, const SaddlePoint& saddle,
                                 const QuadratureRule& rule) {
  const LayerField field = layer_field(config, layer, qhat_of(saddle, layer));
  const auto z = rule.bulk_nodes();
  const auto w = rule.bulk_weights();
  MomentIntegrals out;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double e1 = field.first(z[i]);
    const double e2 = field.second(e1);
    const double e1sq = e1 * e1;
    out.V += w[i] * (e2 - e1sq);
    out.U += w[i] * e1 * (e2 - e1sq);
    out.W += w[i] * (e2 * e2 - 4.0 * e2 * e1sq + 3.0 * e1sq * e1sq);
  }
  return out;
}

SusceptibilityMatrix susceptibility(const ModelConfig& config, const SaddlePoint& saddle,
                                    const QuadratureRule& rule, double singular_threshold) {
  config.validate();
  const MomentIntegrals mv = moment_integrals(config, Layer::Visible, saddle, rule);
  const MomentIntegrals mh = moment_integrals(config, Layer::Hidden, saddle, rule);

  const double a = config.alpha;
  const double b2 = config.beta * config.beta;
  Eigen::Matrix2d t;
  t << 0.0, a, 1.0, 0.0;
  t /= 1.0 + a;
  const Eigen::Matrix2d t_hat = Eigen::Vector2d(1.0, a).asDiagonal() * (1.0 / (1.0 + a));
  const Eigen::Matrix2d v = Eigen::Vector2d(mv.V, mh.V).asDiagonal();
  const Eigen::Matrix2d u = Eigen::Vector2d(mv.U, mh.U).asDiagonal();
  const Eigen::Matrix2d w = Eigen::Vector2d(mv.W, mh.W).asDiagonal();

  const Eigen::Matrix2d m = Eigen::Matrix2d::Identity() - b2 * w * t;
  const double det = m.determinant();
  if (!(std::abs(det) >= singular_threshold)) {
    throw SingularSusceptibilityError(config.beta, det);
  }
  const Eigen::Matrix2d chi = t_hat * (v - 2.0 * b2 * u * t * m.inverse() * u);
  return {chi(0, 0), chi(0, 1), chi(1, 0), chi(1, 1)};
}

std::pair<double, double> regularized_biases(double b, double c, HiddenSpace hidden,
                                             double epsilon) {
  // chi_vh is odd in b for both hidden spaces, and odd in c for +-1 hidden
  // units, so an exact zero there makes it vanish identically.
  if (b == 0.0) {
    b = epsilon;
  }
  if (hidden == HiddenSpace::Ising && c == 0.0) {
    c = epsilon;
  }
  return {b, c};
}

namespace {

// A fixed-order rule resolves sigma(x + z sqrt(qhat)) only while the
// transition of the squashing function stays wide against the node spacing
// where it sits. qhat alone gives a first guess of the order; a point then
// counts as resolved once doubling the order moves |chi_vh| by less than
// kOrderTolerance (relative), which also covers transitions pushed into the
// Gaussian tail by a large offset.
constexpr double kNodesPerQhat = 16.0;
constexpr int kMaxOrderDoublings = 7;
constexpr double kOrderTolerance = 1e-8;

int resolving_order(int base_order, const SaddlePoint& saddle) {
  const double need = kNodesPerQhat * std::max(saddle.qhat_v, saddle.qhat_h);
  int order = base_order;
  for (int k = 0; k < kMaxOrderDoublings && order < need; ++k) {
    order *= 2;
  }
  return order;
}

struct ResolvedPoint {
  SaddlePoint saddle;
  const QuadratureRule* rule = nullptr;
};

ResolvedPoint solve_on(const ModelConfig& config, const SearchConfig& search, int order,
                       const SaddlePoint* warm) {
  ResolvedPoint point;
  point.rule = &QuadratureRule::standard_normal(order);
  point.saddle = warm != nullptr
                     ? iterate_saddle(config, *point.rule, search.solver, warm->q_v, warm->q_h)
                     : solve_saddle_point(config, *point.rule, search.solver);
  return point;
}

// |chi_vh| on the point's rule, +infinity at a singular point.
double abs_chi_vh_on(const ModelConfig& config, const SearchConfig& search, const ResolvedPoint& point) {
  try {
    return std::abs(susceptibility(config, point.saddle, *point.rule, search.singular_threshold).vh);
  } catch (const SingularSusceptibilityError&) {
    return std::numeric_limits<double>::infinity();
  }
}

bool agrees(double coarse, double fine) {
  if (std::isinf(coarse) || std::isinf(fine)) {
    return std::isinf(coarse) && std::isinf(fine);
  }
  return std::abs(fine - coarse) <= kOrderTolerance * std::abs(fine);
}

// `order_hint` lets a scan begin where the previous beta ended up; the
// required order grows with beta, so few points need more than one doubling.
double abs_chi_vh_at(const ModelConfig& config, const SearchConfig& search, int* order_hint = nullptr) {
  const int base = search.quadrature_order;
  const int cap = base << kMaxOrderDoublings;
  int order = std::max(base, order_hint != nullptr ? *order_hint : 0);
  ResolvedPoint coarse = solve_on(config, search, order, nullptr);
  if (const int guess = resolving_order(base, coarse.saddle); guess > order) {
    coarse = solve_on(config, search, guess, &coarse.saddle);
  }
  double value = abs_chi_vh_on(config, search, coarse);
  while (coarse.rule->order() < cap) {
    const ResolvedPoint fine = solve_on(config, search, 2 * coarse.rule->order(), &coarse.saddle);
    const double refined = abs_chi_vh_on(config, search, fine);
    const bool done = agrees(value, refined);
    value = refined;
    if (done) {
      break;
    }
    coarse = fine;
  }
  if (order_hint != nullptr) {
    *order_hint = coarse.rule->order();
  }
  return value;
}

}  // namespace

PhaseScan phase_scan(double alpha, double b, double c, HiddenSpace hidden,
                     std::span<const double> betas, const SearchConfig& search) {
  if (!(std::isfinite(alpha) && alpha > 0.0)) {
    throw DomainError("alpha must be positive");
  }
  for (std::size_t i = 0; i < betas.size(); ++i) {
    if (!(betas[i] > 0.0) || !std::isfinite(betas[i]) || (i > 0 && !(betas[i] > betas[i - 1]))) {
      throw DomainError("phase scan grid must be strictly increasing and positive");
    }
  }
  const auto [b_eff, c_eff] = regularized_biases(b, c, hidden, search.zero_bias_epsilon);

  PhaseScan scan;
  int order_hint = search.quadrature_order;
  scan.betas.assign(betas.begin(), betas.end());
  scan.abs_chi_vh.assign(betas.size(), 0.0);
  scan.singular.assign(betas.size(), false);
  for (std::size_t i = 0; i < betas.size(); ++i) {
    const double value = abs_chi_vh_at({alpha, b_eff, c_eff, hidden, betas[i]}, search, &order_hint);
    if (std::isinf(value)) {
      scan.singular[i] = true;
    } else {
      scan.abs_chi_vh[i] = value;
    }
  }

  const std::size_t count = betas.size();
  for (std::size_t i = 0; i < count; ++i) {
    if (!scan.singular[i]) {
      continue;
    }
    double fill = 0.0;
    if (i > 0 && !scan.singular[i - 1]) {
      fill = std::max(fill, scan.abs_chi_vh[i - 1]);
    }
    if (i + 1 < count && !scan.singular[i + 1]) {
      fill = std::max(fill, scan.abs_chi_vh[i + 1]);
    }
    scan.abs_chi_vh[i] = fill;
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < count; ++i) {
    const bool higher = scan.abs_chi_vh[i] > scan.abs_chi_vh[best];
    const bool tie_to_singular = scan.abs_chi_vh[i] == scan.abs_chi_vh[best] && scan.singular[i] &&
                                 !scan.singular[best];
    if (higher || tie_to_singular) {
      best = i;
    }
  }
  scan.argmax_beta = count > 0 ? scan.betas[best] : 0.0;
  return scan;
}

double find_beta_max(double alpha, double b, double c, HiddenSpace hidden,
                     const SearchConfig& search) {
  const double beta_c = beta_critical(alpha);
  if (hidden == HiddenSpace::Ising && b == 0.0 && c == 0.0) {
    return beta_c;
  }
  if (!(search.grid_step > 0.0) || !(search.tolerance > 0.0)) {
    throw DomainError("beta search step and tolerance must be positive");
  }

  const double beta_hi = search.beta_hi > 0.0 ? search.beta_hi : 2.0 * (1.0 + beta_c + std::abs(c));
  const auto points = static_cast<std::size_t>(std::floor(beta_hi / search.grid_step + 1e-9));
  std::vector<double> grid(points);
  for (std::size_t k = 0; k < points; ++k) {
    grid[k] = search.grid_step * static_cast<double>(k + 1);
  }

  const PhaseScan scan = phase_scan(alpha, b, c, hidden, grid, search);
  const auto best = static_cast<std::size_t>(
      std::find(scan.betas.begin(), scan.betas.end(), scan.argmax_beta) - scan.betas.begin());
  if (points < 3 || best == 0 || best + 1 >= points) {
    std::ostringstream os;
    os << "no interior maximum of |chi_vh| in (0, " << beta_hi << "] for alpha=" << alpha
       << ", c=" << c << " (" << to_string(hidden) << ")";
    throw SearchFailure(os.str(), scan.betas, scan.abs_chi_vh);
  }
  if (scan.singular[best]) {
    return scan.betas[best];
  }

  const auto [b_eff, c_eff] = regularized_biases(b, c, hidden, search.zero_bias_epsilon);
  auto objective = [&](double beta) {
    return abs_chi_vh_at({alpha, b_eff, c_eff, hidden, beta}, search);
  };
  const GoldenSectionResult refined =
      golden_section_maximize(objective, scan.betas[best - 1], scan.betas[best + 1], search.tolerance);
  return refined.value >= scan.abs_chi_vh[best] ? refined.x : scan.betas[best];
}

void write_phase_scan_csv(std::ostream& os, const PhaseScan& scan) {
  os << "beta,abs_chi_vh\n";
  const auto flags = os.flags();
  const auto precision = os.precision();
  for (std::size_t i = 0; i < scan.betas.size(); ++i) {
    os << std::setprecision(10) << scan.betas[i] << ',' << std::setprecision(12)
       << scan.abs_chi_vh[i] << '\n';
  }
  os.flags(flags);
  os.precision(precision);
}

}  // namespace rbminit
