#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rbminit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument value was violated (alpha <= 0, bad spec, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Vector/matrix shapes or state alphabets do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// The integrand returned a non-finite value at a quadrature node.
class NodeEvaluationError : public Error {
 public:
  NodeEvaluationError(double node, double value);

  double node() const noexcept { return node_; }
  double value() const noexcept { return value_; }

 private:
  double node_;
  double value_;
};

/// Fixed-point iteration for the saddle-point equations did not converge.
/// Carries the last iterate so callers can inspect how far it got.
class ConvergenceError : public Error {
 public:
  ConvergenceError(double beta, double q_v, double q_h, double residual, int iterations);

  double beta() const noexcept { return beta_; }
  double q_v() const noexcept { return q_v_; }
  double q_h() const noexcept { return q_h_; }
  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double beta_;
  double q_v_;
  double q_h_;
  double residual_;
  int iterations_;
};

/// det(I - beta^2 W T) fell below the singularity threshold.
class SingularSusceptibilityError : public Error {
 public:
  SingularSusceptibilityError(double beta, double determinant);

  double beta() const noexcept { return beta_; }
  double determinant() const noexcept { return determinant_; }

 private:
  double beta_;
  double determinant_;
};

/// The beta search found no interior maximum of |chi_vh|.
class SearchFailure : public Error {
 public:
  SearchFailure(const std::string& what, std::vector<double> betas, std::vector<double> values);

  const std::vector<double>& betas() const noexcept { return betas_; }
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::vector<double> betas_;
  std::vector<double> values_;
};

/// Exact enumeration was requested above the visible-size cap.
class EnumerationCapError : public Error {
 public:
  EnumerationCapError(int n, int cap);
};

/// Malformed input file (CSV/JSON).
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace rbminit
