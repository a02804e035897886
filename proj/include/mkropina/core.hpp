#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace mkropina {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Absolute tolerance on structure-constant identities (coefficient max-norm).
inline constexpr double kStructureTolerance = 1e-12;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vector or matrix sizes that do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Evaluation outside the conic domain or outside a function's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An operation was called without its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Input data failed a structural validation (Jacobi, positivity, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Linear dependence, vanishing denominators and similar degeneracies.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Result of a structural check. When the check fails, `witness` holds the
/// basis indices of the worst offending tuple and `residual` its size.
struct ValidationReport {
  bool passed = true;
  double residual = 0.0;
  std::vector<int> witness;
  std::string detail;

  explicit operator bool() const { return passed; }
};

namespace detail {

inline void require_size(const Vector& v, Eigen::Index n, const char* what) {
  if (v.size() != n) {
    throw DimensionError(std::string(what) + ": expected length " + std::to_string(n) +
                         ", got " + std::to_string(v.size()));
  }
}

// Tracks the worst residual over a scan together with the tuple that caused it.
class WorstCase {
 public:
  void offer(double residual, std::vector<int> tuple) {
    if (residual > worst_) {
      worst_ = residual;
      tuple_ = std::move(tuple);
    }
  }

  ValidationReport report(double tolerance, std::string detail = {}) const {
    ValidationReport r;
    r.residual = worst_;
    r.passed = worst_ <= tolerance;
    if (!r.passed) r.witness = tuple_;
    r.detail = std::move(detail);
    return r;
  }

  double value() const { return worst_; }
  const std::vector<int>& tuple() const { return tuple_; }

 private:
  double worst_ = 0.0;
  std::vector<int> tuple_;
};

inline double relative_gap(double value, double reference) {
  return std::abs(value - reference) / std::max(1.0, std::abs(reference));
}

}  // namespace detail
}  // namespace mkropina
