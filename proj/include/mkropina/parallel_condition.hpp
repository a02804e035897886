#pragma once

#include "mkropina/metric.hpp"

namespace mkropina {

/// Whether the invariant field with value X at the origin is parallel for
/// the invariant Riemannian metric. At the origin this splits into
///   <X, [Y,Z]_m> = 0                      (bracket orthogonality),
///   <[X,Y]_m, Z> + <Y, [X,Z]_m> = 0       (ad(X) skew on m),
///   [h, X] = 0                            (X fixed by the isotropy),
/// for all basis vectors Y, Z of m.
struct ParallelReport {
  bool passed = true;
  ValidationReport bracket_orthogonality;
  ValidationReport skew_adjoint;
  ValidationReport isotropy;
};

inline ParallelReport check_parallel_condition(const HomogeneousSpace& space, const MKropinaMetric& met,
                                               double tolerance = kStructureTolerance) {
  const auto& dec = space.decomposition;
  const Vector& x = met.x();
  detail::require_size(x, space.dim(), "check_parallel_condition");

  detail::WorstCase orth, skew, iso;
  for (int a : dec.m_indices()) {
    const Vector ya = space.algebra.basis(a);
    const Vector xa = space.bracket_m(x, ya);
    for (int c : dec.m_indices()) {
      const Vector zc = space.algebra.basis(c);
      orth.offer(std::abs(met.inner(x, space.bracket_m(ya, zc))), {a, c});
      skew.offer(std::abs(met.inner(xa, zc) + met.inner(ya, space.bracket_m(x, zc))), {a, c});
    }
  }
  for (int h : dec.h_indices()) {
    iso.offer(space.bracket(space.algebra.basis(h), x).cwiseAbs().maxCoeff(), {h});
  }

  ParallelReport r;
  r.bracket_orthogonality = orth.report(tolerance, "<X,[Y,Z]_m> = 0");
  r.skew_adjoint = skew.report(tolerance, "ad(X) skew-adjoint on m");
  r.isotropy = iso.report(tolerance, "[h,X] = 0");
  for (auto* part : {&r.bracket_orthogonality, &r.skew_adjoint, &r.isotropy}) {
    if (!part->passed) part->detail += " fails at " + space.algebra.describe(part->witness);
  }
  r.passed = r.bracket_orthogonality.passed && r.skew_adjoint.passed && r.isotropy.passed;
  return r;
}

}  // namespace mkropina
