#include "rbminit/errors.hpp"

#include <sstream>
#include <utility>

namespace rbminit {
namespace {

std::string format_node(double node, double value) {
  std::ostringstream os;
  os << "integrand is not finite at quadrature node z=" << node << " (value " << value << ")";
  return os.str();
}

std::string format_convergence(double beta, double residual, int iterations) {
  std::ostringstream os;
  os << "saddle-point iteration did not converge at beta=" << beta << " after " << iterations
     << " iterations (residual " << residual << ")";
  return os.str();
}

std::string format_singular(double beta, double det) {
  std::ostringstream os;
  os << "susceptibility is singular at beta=" << beta << " (det=" << det << ")";
  return os.str();
}

std::string format_cap(int n, int cap) {
  std::ostringstream os;
  os << "exact enumeration needs n <= " << cap << " visible units, got n=" << n
     << "; use the mAIS estimator instead";
  return os.str();
}

}  // namespace

NodeEvaluationError::NodeEvaluationError(double node, double value)
    : Error(format_node(node, value)), node_(node), value_(value) {}

ConvergenceError::ConvergenceError(double beta, double q_v, double q_h, double residual,
                                   int iterations)
    : Error(format_convergence(beta, residual, iterations)),
      beta_(beta),
      q_v_(q_v),
      q_h_(q_h),
      residual_(residual),
      iterations_(iterations) {}

SingularSusceptibilityError::SingularSusceptibilityError(double beta, double determinant)
    : Error(format_singular(beta, determinant)), beta_(beta), determinant_(determinant) {}

SearchFailure::SearchFailure(const std::string& what, std::vector<double> betas,
                             std::vector<double> values)
    : Error(what), betas_(std::move(betas)), values_(std::move(values)) {}

EnumerationCapError::EnumerationCapError(int n, int cap) : Error(format_cap(n, cap)) {}

}  // namespace rbminit
