#pragma once

#include <stdexcept>
#include <string>

namespace expsum {

// Weight oracle returned an inconsistent prefix sum (negative mass,
// non-monotone, or bad normalization).
class OracleViolation : public std::runtime_error {
 public:
  explicit OracleViolation(const std::string& msg) : std::runtime_error(msg) {}
};

// An iterative estimator could not reconcile its measurements. Carries the
// best estimate available when the failure was detected.
class EstimationFailure : public std::runtime_error {
 public:
  EstimationFailure(const std::string& msg, double partial)
      : std::runtime_error(msg), partial_estimate(partial) {}
  double partial_estimate;
};

// Quadrature or series evaluation failed to converge.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// Evaluation requested at the pole s = 1.
class PoleError : public std::domain_error {
 public:
  explicit PoleError(const std::string& msg) : std::domain_error(msg) {}
};

}  // namespace expsum
