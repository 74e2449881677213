#pragma once

#include <iosfwd>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "rbminit/hidden_space.hpp"
#include "rbminit/quadrature.hpp"

namespace rbminit {

enum class Layer { Visible, Hidden };

/**
 * One instance of the replica-symmetric mean-field problem for the initial
 * RBM: uniform biases (b, c), Gaussian weights with standard deviation
 * beta / sqrt(n + m), layer ratio alpha = m / n, in the n, m -> infinity limit.
 */
struct ModelConfig {
  double alpha = 1.0;
  double b = 0.0;
  double c = 0.0;
  HiddenSpace hidden = HiddenSpace::Ising;
  double beta = 0.0;

  /// Throws DomainError unless alpha > 0 and beta >= 0 (both finite).
  void validate() const;
};

/// Order parameters (q_v, q_h) and auxiliary fields (qhat_v, qhat_h).
struct SaddlePoint {
  double q_v = 0.0;
  double q_h = 0.0;
  double qhat_v = 0.0;
  double qhat_h = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

struct SolverOptions {
  double damping = 0.5;
  double tolerance = 1e-12;
  int max_iterations = 50000;
  /// Both order parameters start here; a value near one selects the
  /// nontrivial branch whenever it exists.
  double initial_q = 0.999;
};

struct SusceptibilityMatrix {
  double vv = 0.0;
  double vh = 0.0;
  double hv = 0.0;
  double hh = 0.0;
};

/// Gaussian averages entering the susceptibility (diagonal entries of V, U, W).
struct MomentIntegrals {
  double V = 0.0;  // <E2 - E1^2>
  double U = 0.0;  // <E1 (E2 - E1^2)>
  double W = 0.0;  // <E2^2 - 4 E2 E1^2 + 3 E1^4>
};

struct Magnetizations {
  double m_v = 0.0;
  double m_h = 0.0;
};

struct SearchConfig {
  /// Upper end of the beta scan; <= 0 means 2 (1 + beta_critical(alpha) + |c|).
  double beta_hi = 0.0;
  double grid_step = 0.01;
  double tolerance = 1e-4;
  /// Exact-zero biases that would make chi_vh vanish identically by symmetry
  /// are replaced by this value on the numeric path.
  double zero_bias_epsilon = 1e-3;
  double singular_threshold = 1e-12;
  /// Base rule. Each point is re-solved on doubled orders (up to 128x) until
  /// one more doubling changes abs(chi_vh) by less than 1e-8 relative.
  int quadrature_order = QuadratureRule::kDefaultOrder;
  SolverOptions solver{};
};

struct PhaseScan {
  std::vector<double> betas;
  std::vector<double> abs_chi_vh;
  std::vector<bool> singular;
  double argmax_beta = 0.0;
};

/// E_l^(r)(z): conditional moment of one unit of `layer` under its effective field.
double conditional_moment(const ModelConfig& config, Layer layer, const SaddlePoint& saddle,
                          double z, int r);

/// (qhat_v, qhat_h) = beta^2 T_alpha (q_v, q_h).
SaddlePoint with_auxiliary_fields(const ModelConfig& config, double q_v, double q_h);

/// Right-hand sides of the order-parameter equations evaluated at `saddle`'s
/// auxiliary fields: returns (q_v, q_h) as the next iterate would see them.
std::pair<double, double> order_parameter_map(const ModelConfig& config, const SaddlePoint& saddle,
                                              const QuadratureRule& rule);

SaddlePoint solve_saddle_point(const ModelConfig& config, const QuadratureRule& rule,
                               const SolverOptions& options = {});

/// Replica-symmetric free energy per unit at a solved saddle point.
double free_energy(const ModelConfig& config, const SaddlePoint& saddle, const QuadratureRule& rule);

/// M_v = -df/db and M_h = -df/dc at a solved saddle point.
Magnetizations magnetizations(const ModelConfig& config, const SaddlePoint& saddle,
                              const QuadratureRule& rule);

/// sqrt(sqrt(alpha) + 1/sqrt(alpha)). Throws DomainError for alpha <= 0.
double beta_critical(double alpha);

MomentIntegrals moment_integrals(const ModelConfig& config, Layer layer, const SaddlePoint& saddle,
                                 const QuadratureRule& rule);

/**
 * chi = T^_alpha { V - 2 beta^2 U T_alpha (I - beta^2 W T_alpha)^{-1} U }.
 * The off-diagonal entry chi_vh is the layer correlation (up to a constant).
 * Throws SingularSusceptibilityError when |det(I - beta^2 W T_alpha)| is
 * below `singular_threshold`.
 */
SusceptibilityMatrix susceptibility(const ModelConfig& config, const SaddlePoint& saddle,
                                    const QuadratureRule& rule, double singular_threshold = 1e-12);

/// Biases actually used by the numeric beta search (zero biases replaced by epsilon).
std::pair<double, double> regularized_biases(double b, double c, HiddenSpace hidden,
                                             double epsilon);

/**
 * beta maximizing |chi_vh|. Ising hidden units with b = c = 0 use the closed
 * form beta_critical(alpha); everything else is a grid scan followed by a
 * golden-section refinement around the best grid point.
 */
double find_beta_max(double alpha, double b, double c, HiddenSpace hidden,
                     const SearchConfig& search = {});

/// |chi_vh| on a caller-supplied, strictly increasing grid of positive betas.
PhaseScan phase_scan(double alpha, double b, double c, HiddenSpace hidden,
                     std::span<const double> betas, const SearchConfig& search = {});

/// CSV with header `beta,abs_chi_vh`.
void write_phase_scan_csv(std::ostream& os, const PhaseScan& scan);

}  // namespace rbminit
