#pragma once

#include "mkropina/fundamental_tensor.hpp"
#include "mkropina/metric_validity.hpp"
#include "mkropina/parallel_condition.hpp"
#include "mkropina/sampling.hpp"

namespace mkropina {

inline constexpr double kRiemannianNatredTolerance = 1e-10;
inline constexpr double kLatifiTolerance = 1e-7;

struct RiemannianNatredReport {
  /// <[X,Y]_m,Z> + <Y,[X,Z]_m> = 0 over basis triples of m; decides pass/fail.
  ValidationReport standard;
  /// <[X,Y]_m,Z> + <X,[Y,Z]_m>, kept for comparison only. On a bi-invariant
  /// metric it equals 2<[X,Y],Z> and is nonzero on any nonabelian algebra.
  double alternate_residual = 0.0;
  std::vector<int> alternate_witness;

  bool passed() const { return standard.passed; }
};

inline RiemannianNatredReport check_riemannian_natred(const HomogeneousSpace& space,
                                                      double tolerance = kRiemannianNatredTolerance) {
  const auto& mi = space.decomposition.m_indices();
  detail::WorstCase standard, alternate;
  for (int a : mi)
    for (int b : mi)
      for (int c : mi) {
        const Vector x = space.algebra.basis(a), y = space.algebra.basis(b), z = space.algebra.basis(c);
        const double first = space.inner(space.bracket_m(x, y), z);
        standard.offer(std::abs(first + space.inner(y, space.bracket_m(x, z))), {a, b, c});
        alternate.offer(std::abs(first + space.inner(x, space.bracket_m(y, z))), {a, b, c});
      }
  RiemannianNatredReport r;
  r.standard = standard.report(tolerance, "natural reductivity of <.,.>");
  if (!r.standard.passed) r.standard.detail += " fails at " + space.algebra.describe(r.standard.witness);
  r.alternate_residual = alternate.value();
  r.alternate_witness = alternate.tuple();
  return r;
}

/// One evaluation of g_Y([Z,U]_m,V) + g_Y([Z,V]_m,U) + 2 C_Y([Z,Y]_m,U,V).
struct LatifiTerms {
  double first = 0.0;
  double second = 0.0;
  double cartan = 0.0;
  /// Size of g_Y itself (largest entry on the basis of m). Near the cone
  /// boundary g_Y is large and the finite-difference Cartan term carries
  /// rounding noise proportional to it.
  double scale = 0.0;

  double sum() const { return first + second + cartan; }
  /// |sum| / (1 + |first| + |second| + |cartan| + scale)
  double relative() const {
    return std::abs(sum()) / (1.0 + std::abs(first) + std::abs(second) + std::abs(cartan) + scale);
  }
};

/// `scale` as above; computed from y when negative.
inline LatifiTerms latifi_terms(const HomogeneousSpace& space, const MKropinaMetric& met, const Vector& y,
                                const Vector& z, const Vector& u, const Vector& v, double scale = -1.0) {
  const TensorEvalContext ctx(met, y);
  LatifiTerms t;
  t.scale = scale >= 0.0 ? scale : hessian_matrix(met, y, space.decomposition.m_indices()).cwiseAbs().maxCoeff();
  t.first = g_closed(ctx, space.bracket_m(z, u), v);
  t.second = g_closed(ctx, space.bracket_m(z, v), u);
  // C_Y is totally symmetric; differentiating along [Z,Y]_m leaves U and V
  // inside the symmetric g, so swapping them changes nothing numerically.
  t.cartan = 2.0 * cartan(met, y, u, v, space.bracket_m(z, y));
  return t;
}

struct LatifiSampling {
  int count = 16;
  std::uint64_t seed = 1;
  bool include_basis_poles = true;
};

struct LatifiReport {
  bool passed = true;
  /// Worst relative residual.
  double residual = 0.0;
  /// Pole of the worst evaluation and the basis indices (Z, U, V).
  Vector witness_y;
  std::vector<int> witness;
  int poles = 0;
  std::string detail;
};

/// Poles used by the Latifi check: the seeded sample, then every basis
/// direction +e_i of m that is an acceptable pole.
inline std::vector<Vector> latifi_poles(const HomogeneousSpace& space, const MKropinaMetric& met,
                                        const LatifiSampling& sampling) {
  const auto& mi = space.decomposition.m_indices();
  std::vector<Vector> poles = sample_poles(met, mi, sampling.count, sampling.seed);
  if (sampling.include_basis_poles) {
    for (int i : mi) {
      const Vector e = space.algebra.basis(i);
      const Vector y = e / std::sqrt(met.inner(e, e));
      if (acceptable_pole(met, y, mi)) poles.push_back(y);
    }
  }
  return poles;
}

inline LatifiReport check_latifi_natred(const HomogeneousSpace& space, const MKropinaMetric& met,
                                        const LatifiSampling& sampling = {}, double tolerance = kLatifiTolerance) {
  const auto& mi = space.decomposition.m_indices();
  LatifiReport r;
  const auto poles = latifi_poles(space, met, sampling);
  r.poles = static_cast<int>(poles.size());
  for (const Vector& y : poles) {
    const double scale = hessian_matrix(met, y, mi).cwiseAbs().maxCoeff();
    for (int a : mi)
      for (int b : mi)
        for (int c : mi) {
          const auto t = latifi_terms(space, met, y, space.algebra.basis(a), space.algebra.basis(b),
                                      space.algebra.basis(c), scale);
          const double res = t.relative();
          if (res > r.residual) {
            r.residual = res;
            r.witness_y = y;
            r.witness = {a, b, c};
          }
        }
  }
  r.passed = r.residual <= tolerance;
  r.detail = "Finsler natural reductivity";
  if (!r.passed) r.detail += " fails at (Z,U,V) = " + space.algebra.describe(r.witness);
  return r;
}

enum class Equivalence { consistent, inconsistent, not_applicable };

inline std::string_view to_string(Equivalence e) {
  switch (e) {
    case Equivalence::consistent: return "consistent";
    case Equivalence::inconsistent: return "inconsistent";
    case Equivalence::not_applicable: return "not_applicable";
  }
  return "?";
}

/// With X parallel, the Riemannian and the Finsler natural-reductivity
/// checks must agree. Without it there is nothing to compare.
struct ReductivityReport {
  RiemannianNatredReport riemannian;
  LatifiReport latifi;
  ParallelReport parallel;
  Equivalence equivalence = Equivalence::not_applicable;
};

inline ReductivityReport theorem41_report(const HomogeneousSpace& space, const MKropinaMetric& met,
                                          const LatifiSampling& sampling = {}) {
  ReductivityReport r;
  r.riemannian = check_riemannian_natred(space);
  r.latifi = check_latifi_natred(space, met, sampling);
  r.parallel = check_parallel_condition(space, met);
  if (r.parallel.passed) {
    r.equivalence = r.riemannian.passed() == r.latifi.passed ? Equivalence::consistent : Equivalence::inconsistent;
  }
  return r;
}

}  // namespace mkropina
