#pragma once

#include "mkropina/curvature_backends.hpp"
#include "mkropina/flag.hpp"
#include "mkropina/metric_validity.hpp"
#include "mkropina/reductivity.hpp"

namespace mkropina {

inline constexpr double kDenominatorGuard = 1e-14;

enum class TensorSource { closed_form, fd_oracle };

struct FlagCurvatureReport {
  double k = 0.0;
  double numerator = 0.0;
  double denominator = 0.0;
  FlagAdmissibility admissibility;
  std::vector<std::string> notes;
};

struct FormulaValue {
  double k = 0.0;
  double numerator = 0.0;
  double denominator = 0.0;
};

namespace detail {

inline FormulaValue guarded(double numerator, double denominator) {
  if (std::abs(denominator) < kDenominatorGuard) {
    throw DegenerateError("flag curvature: denominator " + std::to_string(denominator) + " vanishes");
  }
  return {numerator / denominator, numerator, denominator};
}

inline FormulaValue kropina_flag_formula(double m, double xy, double xu, double u_term, double x_term,
                                         double scale) {
  const double numerator = std::pow(xy, 2.0 * m) * ((m + 1.0) * xy * xy * u_term + m * (2.0 * m + 1.0) * xu * x_term);
  const double denominator = scale * (m + 1.0) * (m * xu * xu + xy * xy);
  return guarded(numerator, denominator);
}

}  // namespace detail

/// K from <X,Y>, <X,U>, <U,R(U,Y)Y> and <X,R(U,Y)Y> for an orthonormal
/// flag. Any real m is accepted here; at m = 0 it returns <U,R(U,Y)Y>.
inline FormulaValue curvature_from_products(double m, double xy, double xu, double u_r, double x_r) {
  return detail::kropina_flag_formula(m, xy, xu, u_r, x_r, 1.0);
}

/// The same shape with the bracket terms <U,[Y,[U,Y]]...> in place of the
/// curvature and an extra factor 4 in the denominator.
inline FormulaValue bracket_flag_formula(double m, double xy, double xu, double u_term, double x_term) {
  return detail::kropina_flag_formula(m, xy, xu, u_term, x_term, 4.0);
}

namespace detail {

inline FlagAdmissibility require_admissible(const HomogeneousSpace& space, const MKropinaMetric& met,
                                            const Flag& flag) {
  auto adm = check_flag_admissible(met, flag.y, flag.u, space.decomposition.m_indices());
  if (!adm.admissible()) {
    std::string why;
    for (const auto& r : adm.reasons) why += (why.empty() ? "" : "; ") + r;
    throw DomainError("inadmissible flag: " + why);
  }
  return adm;
}

/// The closed formulas in <X,Y>, <X,U> need an orthonormal flag; others are converted.
inline Flag orthonormal_version(const MKropinaMetric& met, const Flag& flag, std::vector<std::string>& notes) {
  if (is_orthonormal(met.gram(), flag.y, flag.u)) return {flag.y, flag.u, true};
  notes.push_back("flag orthonormalized by Gram-Schmidt before evaluation");
  return orthonormalize_flag(met.gram(), flag.y, flag.u);
}

inline void note_parallel(const HomogeneousSpace& space, const MKropinaMetric& met, std::vector<std::string>& notes) {
  if (!check_parallel_condition(space, met).passed) {
    notes.push_back("X is not parallel; the formula's hypotheses do not hold");
  }
}

}  // namespace detail

/// K = g_Y(U, R(U,Y)Y) / (g_Y(Y,Y) g_Y(U,U) - g_Y(Y,U)^2) with R the
/// curvature of <.,.> from the backend. That R is the curvature of F only
/// when X is parallel.
inline FlagCurvatureReport flag_curvature_general(const HomogeneousSpace& space, const MKropinaMetric& met,
                                                  const CurvatureBackend& backend, const Flag& flag,
                                                  TensorSource source = TensorSource::closed_form) {
  FlagCurvatureReport rep;
  rep.admissibility = detail::require_admissible(space, met, flag);
  detail::note_parallel(space, met, rep.notes);
  const Vector r = curvature_vector(space, backend, flag.u, flag.y);
  const Vector& y = flag.y;
  const Vector& u = flag.u;
  double g_ur, g_yy, g_uu, g_yu;
  if (source == TensorSource::closed_form) {
    const TensorEvalContext ctx(met, y);
    g_ur = g_closed(ctx, u, r);
    g_yy = g_closed(ctx, y, y);
    g_uu = g_closed(ctx, u, u);
    g_yu = g_closed(ctx, y, u);
  } else {
    g_ur = g_fd_oracle(met, y, u, r);
    g_yy = g_fd_oracle(met, y, y, y);
    g_uu = g_fd_oracle(met, y, u, u);
    g_yu = g_fd_oracle(met, y, y, u);
  }
  const auto v = detail::guarded(g_ur, g_yy * g_uu - g_yu * g_yu);
  rep.k = v.k;
  rep.numerator = v.numerator;
  rep.denominator = v.denominator;
  return rep;
}

inline FlagCurvatureReport flag_curvature_thm31(const HomogeneousSpace& space, const MKropinaMetric& met,
                                                const Flag& flag, double sigma = -1.0,
                                                ProductReading reading = ProductReading::mixed) {
  FlagCurvatureReport rep;
  rep.admissibility = detail::require_admissible(space, met, flag);
  const Flag f = detail::orthonormal_version(met, flag, rep.notes);
  detail::note_parallel(space, met, rep.notes);
  const auto p = thm31_inner_products(space, met.x(), f.u, f.y, sigma, reading);
  const auto v = curvature_from_products(met.exponent(), met.inner(met.x(), f.y), met.inner(met.x(), f.u), p.u_r, p.x_r);
  rep.k = v.k;
  rep.numerator = v.numerator;
  rep.denominator = v.denominator;
  return rep;
}

/// Bracket formula for naturally reductive spaces, with both the [.,.]_m
/// and the [.,.]_h terms inside the factor 1/4.
inline FlagCurvatureReport flag_curvature_natred(const HomogeneousSpace& space, const MKropinaMetric& met,
                                                 const Flag& flag) {
  FlagCurvatureReport rep;
  rep.admissibility = detail::require_admissible(space, met, flag);
  const Flag f = detail::orthonormal_version(met, flag, rep.notes);
  detail::note_parallel(space, met, rep.notes);
  if (!check_riemannian_natred(space).passed()) {
    rep.notes.push_back("<.,.> is not naturally reductive for this decomposition");
  }
  const auto& dec = space.decomposition;
  const Vector uy = space.bracket(f.u, f.y);
  const Vector w = dec.m_part(space.bracket(f.y, dec.m_part(uy))) + space.bracket(f.y, dec.h_part(uy));
  const auto v = bracket_flag_formula(met.exponent(), met.inner(met.x(), f.y), met.inner(met.x(), f.u),
                                      met.inner(f.u, w), met.inner(met.x(), w));
  rep.k = v.k;
  rep.numerator = v.numerator;
  rep.denominator = v.denominator;
  return rep;
}

/// Bracket formula for a bi-invariant <.,.> on a group (H trivial).
inline FlagCurvatureReport flag_curvature_biinv(const HomogeneousSpace& space, const MKropinaMetric& met,
                                                const Flag& flag) {
  FlagCurvatureReport rep;
  rep.admissibility = detail::require_admissible(space, met, flag);
  const Flag f = detail::orthonormal_version(met, flag, rep.notes);
  detail::note_parallel(space, met, rep.notes);
  if (!space.decomposition.trivial_isotropy()) rep.notes.push_back("isotropy h is not trivial");
  if (!check_bi_invariance(space.algebra, met.gram()).passed) rep.notes.push_back("<.,.> is not bi-invariant");
  const Vector w = space.bracket(f.y, space.bracket(f.u, f.y));
  const auto v = bracket_flag_formula(met.exponent(), met.inner(met.x(), f.y), met.inner(met.x(), f.u),
                                      met.inner(f.u, w), met.inner(met.x(), w));
  rep.k = v.k;
  rep.numerator = v.numerator;
  rep.denominator = v.denominator;
  return rep;
}

}  // namespace mkropina
