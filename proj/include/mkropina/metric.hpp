#pragma once

#include "mkropina/lie_core.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace mkropina {

enum class NormBound { strict, relaxed };

struct AlphaBeta {
  double alpha = 0.0;
  double beta = 0.0;
};

/// F = alpha^{m+1} / beta^m with alpha(y) = sqrt(<y,y>) and beta(y) = <X,y>.
/// Only defined on the open cone beta > 0.
class MKropinaMetric {
 public:
  MKropinaMetric(double m_exp, Vector x_vec, Matrix gram, NormBound bound = NormBound::strict)
      : m_(m_exp), x_(std::move(x_vec)), gram_(std::move(gram)), bound_(bound) {
    if (!std::isfinite(m_) || m_ == 0.0 || m_ == -1.0) {
      throw ValidationError("exponent m must be a finite real outside {0, -1}");
    }
    if (gram_.rows() != gram_.cols() || gram_.rows() != x_.size()) {
      throw DimensionError("metric: X and gram sizes disagree");
    }
    if (!is_positive_definite(gram_)) throw ValidationError("metric: gram is not positive definite");
    if (x_.cwiseAbs().maxCoeff() == 0.0) throw ValidationError("metric: X must be nonzero");
    x_norm_ = std::sqrt(x_.dot(gram_ * x_));
    if (x_norm_ >= 1.0) {
      if (bound == NormBound::strict) {
        throw ValidationError("metric: sqrt(<X,X>) = " + std::to_string(x_norm_) + " must be < 1");
      }
      warnings_.push_back("sqrt(<X,X>) >= 1 accepted because the norm bound is relaxed");
    }
  }

  double exponent() const { return m_; }
  const Vector& x() const { return x_; }
  const Matrix& gram() const { return gram_; }
  Eigen::Index dim() const { return x_.size(); }
  /// b = ||beta||_alpha = sqrt(<X,X>).
  double x_norm() const { return x_norm_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  NormBound norm_bound() const { return bound_; }

  double inner(const Vector& a, const Vector& b) const { return a.dot(gram_ * b); }

  AlphaBeta alpha_beta(const Vector& y) const {
    detail::require_size(y, dim(), "alpha_beta");
    return {std::sqrt(std::max(0.0, inner(y, y))), inner(x_, y)};
  }

  double norm(const Vector& y) const {
    const auto [alpha, beta] = alpha_beta(y);
    if (!(beta > 0.0)) {
      throw DomainError("norm: beta(y) = " + std::to_string(beta) + " is outside the cone beta > 0");
    }
    return std::pow(alpha, m_ + 1.0) / std::pow(beta, m_);
  }

  double norm_squared(const Vector& y) const {
    const double f = norm(y);
    return f * f;
  }

 private:
  double m_;
  Vector x_;
  Matrix gram_;
  NormBound bound_;
  double x_norm_ = 0.0;
  std::vector<std::string> warnings_;
};

/// phi(s) = s^{-m} and its first two derivatives.
struct PhiValues {
  double phi = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

inline PhiValues phi_eval(double m_exp, double s) {
  if (!(s > 0.0)) throw DomainError("phi: s must be positive");
  const double p = std::pow(s, -m_exp);
  return {p, -m_exp * p / s, m_exp * (m_exp + 1.0) * p / (s * s)};
}

/// phi - s phi' + (b^2 - s^2) phi'' written out with the three profile values.
inline double convexity_three_term(double m_exp, double s, double b) {
  const auto v = phi_eval(m_exp, s);
  return v.phi - s * v.d1 + (b * b - s * s) * v.d2;
}

/// Closed form of the same quantity: (m+1) s^{-m-2} (s^2 + m (b^2 - s^2)).
inline double convexity_reduced(double m_exp, double s, double b) {
  if (!(s > 0.0)) throw DomainError("convexity: s must be positive");
  return (m_exp + 1.0) * std::pow(s, -m_exp - 2.0) * (s * s + m_exp * (b * b - s * s));
}

/// Nodes s_i, b_j on uniform lines; nodes with s > b or s <= 0 are skipped.
struct ConvexityGrid {
  double s_min = 0.0;
  double s_max = 0.0;
  double b_min = 0.0;
  double b_max = 0.0;
  int s_nodes = 0;
  int b_nodes = 0;

  /// n x n nodes with s, b in {b0/n, 2 b0/n, ..., b0}.
  static ConvexityGrid uniform(double b0, int n) { return {b0 / n, b0, b0 / n, b0, n, n}; }

  /// A single b line with s stepping by `ds` from ds up to b.
  static ConvexityGrid line(double b, double ds) {
    const int n = static_cast<int>(std::floor(b / ds + 1e-9));
    return {ds, ds * n, b, b, n, 1};
  }

  static double node(double lo, double hi, int count, int i) {
    return count <= 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (count - 1);
  }
};

struct ConvexityNode {
  double s = 0.0;
  double b = 0.0;
  double value = 0.0;
};

struct ConvexityReport {
  bool valid = true;
  std::optional<ConvexityNode> first_failure;
  /// Largest s among failing nodes; locates the threshold on a b line.
  std::optional<double> max_failing_s;
  /// Smallest s among passing nodes.
  std::optional<double> min_passing_s;
  int nodes_checked = 0;
  int nodes_failed = 0;
  /// Largest relative gap between the three-term and the reduced form.
  double form_discrepancy = 0.0;
};

/// Samples phi > 0 and phi - s phi' + (b^2 - s^2) phi'' > 0 over the grid,
/// restricted to 0 < s <= b <= b0. Nodes are visited b-major, s ascending.
inline ConvexityReport check_strong_convexity(double m_exp, double b0, const ConvexityGrid& grid) {
  if (!(b0 > 0.0 && b0 < 1.0)) throw DomainError("strong convexity: b0 must lie in (0, 1)");
  ConvexityReport r;
  for (int j = 0; j < grid.b_nodes; ++j) {
    const double b = ConvexityGrid::node(grid.b_min, grid.b_max, grid.b_nodes, j);
    if (b > b0 * (1.0 + 1e-15) || b <= 0.0) continue;
    for (int i = 0; i < grid.s_nodes; ++i) {
      const double s = ConvexityGrid::node(grid.s_min, grid.s_max, grid.s_nodes, i);
      if (s <= 0.0 || s > b * (1.0 + 1e-15)) continue;
      ++r.nodes_checked;
      const double phi = phi_eval(m_exp, s).phi;
      const double generic = convexity_three_term(m_exp, s, b);
      const double reduced = convexity_reduced(m_exp, s, b);
      const double scale = std::max(std::abs(reduced), std::abs(generic));
      if (scale > 0.0) r.form_discrepancy = std::max(r.form_discrepancy, std::abs(generic - reduced) / scale);
      if (phi > 0.0 && reduced > 0.0) {
        if (!r.min_passing_s || s < *r.min_passing_s) r.min_passing_s = s;
        continue;
      }
      ++r.nodes_failed;
      r.valid = false;
      if (!r.first_failure) r.first_failure = ConvexityNode{s, b, reduced};
      if (!r.max_failing_s || s > *r.max_failing_s) r.max_failing_s = s;
    }
  }
  return r;
}

/// s above which the reduced inequality holds on the line b, for -1 < m < 0.
inline double convexity_threshold(double m_exp, double b) {
  if (!(m_exp > -1.0 && m_exp < 0.0)) throw DomainError("threshold only exists for -1 < m < 0");
  return b * std::sqrt(-m_exp / (1.0 - m_exp));
}

}  // namespace mkropina
