#pragma once

#include "mkropina/fundamental_tensor.hpp"

#include <Eigen/Eigenvalues>

namespace mkropina {

struct HessianReport {
  bool positive_definite = false;
  double min_eigenvalue = 0.0;
  Vector eigenvalues;
  std::vector<std::string> warnings;

  explicit operator bool() const { return positive_definite; }
};

/// The matrix g_Y(e_i, e_j) over the given basis directions (all when empty).
inline Matrix hessian_matrix(const MKropinaMetric& met, const Vector& y, const std::vector<int>& directions = {}) {
  const TensorEvalContext ctx(met, y);
  std::vector<int> dirs = directions;
  if (dirs.empty())
    for (int i = 0; i < met.dim(); ++i) dirs.push_back(i);
  const auto n = static_cast<Eigen::Index>(dirs.size());
  Matrix h(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = a; b < n; ++b) {
      h(a, b) = g_closed(ctx, Vector::Unit(met.dim(), dirs[a]), Vector::Unit(met.dim(), dirs[b]));
      h(b, a) = h(a, b);
    }
  return h;
}

/// Positive definiteness of g_Y on span{e_i : i in directions}, by eigenvalues.
inline HessianReport check_hessian_pd(const MKropinaMetric& met, const Vector& y,
                                      const std::vector<int>& directions = {}) {
  const Matrix h = hessian_matrix(met, y, directions);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h, Eigen::EigenvaluesOnly);
  HessianReport r;
  r.eigenvalues = eig.eigenvalues();
  r.min_eigenvalue = r.eigenvalues.minCoeff();
  r.positive_definite = r.min_eigenvalue > 0.0;
  const auto [alpha, beta] = met.alpha_beta(y);
  if (beta < 1e-8 * alpha) {
    r.warnings.push_back("beta(y)/alpha(y) = " + std::to_string(beta / alpha) +
                         ": y is close to the cone boundary and g_Y is badly conditioned");
  }
  return r;
}

/// Hypotheses a flag (Y, U) needs before any curvature formula is applied.
struct FlagAdmissibility {
  bool cone = false;
  bool independent = false;
  bool norm_bound = false;
  /// g_Y positive definite on the directions of m.
  bool strongly_convex = false;
  std::vector<std::string> reasons;

  bool admissible() const { return cone && independent && norm_bound && strongly_convex; }
  explicit operator bool() const { return admissible(); }
};

inline FlagAdmissibility check_flag_admissible(const MKropinaMetric& met, const Vector& y, const Vector& u,
                                               const std::vector<int>& directions = {}) {
  detail::require_size(y, met.dim(), "check_flag_admissible");
  detail::require_size(u, met.dim(), "check_flag_admissible");
  FlagAdmissibility r;
  r.cone = met.inner(met.x(), y) > 0.0;
  if (!r.cone) r.reasons.push_back("Y is outside the cone <X,Y> > 0");

  const double yy = met.inner(y, y), uu = met.inner(u, u), uy = met.inner(u, y);
  const double sin2 = (yy > 0.0 && uu > 0.0) ? 1.0 - uy * uy / (yy * uu) : 0.0;
  r.independent = sin2 > 1e-12;
  if (!r.independent) r.reasons.push_back("Y and U are linearly dependent");

  r.norm_bound = met.x_norm() < 1.0 || met.norm_bound() == NormBound::relaxed;
  if (!r.norm_bound) r.reasons.push_back("sqrt(<X,X>) >= 1");

  if (r.cone) {
    const auto h = check_hessian_pd(met, y, directions);
    r.strongly_convex = h.positive_definite;
    if (!r.strongly_convex) {
      r.reasons.push_back("g_Y is not positive definite (min eigenvalue " + std::to_string(h.min_eigenvalue) + ")");
    }
  }
  return r;
}

}  // namespace mkropina
