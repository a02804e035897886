#pragma once

#include "mkropina/core.hpp"

namespace mkropina {

/// Flag pole Y and transverse edge U spanning the plane P.
struct Flag {
  Vector y;
  Vector u;
  /// Set when {Y, U} is orthonormal for <.,.> to within 1e-10.
  bool orthonormal = false;
};

inline bool is_orthonormal(const Matrix& gram, const Vector& y, const Vector& u, double tolerance = 1e-10) {
  return std::abs(y.dot(gram * y) - 1.0) <= tolerance && std::abs(u.dot(gram * u) - 1.0) <= tolerance &&
         std::abs(u.dot(gram * y)) <= tolerance;
}

/// Gram-Schmidt for <.,.> = gram: Y' = Y/|Y|, U' = (U - <U,Y'>Y')/|...|.
inline Flag orthonormalize_flag(const Matrix& gram, const Vector& y, const Vector& u) {
  detail::require_size(y, gram.rows(), "orthonormalize_flag");
  detail::require_size(u, gram.rows(), "orthonormalize_flag");
  const double yy = y.dot(gram * y);
  if (!(yy > 0.0)) throw DegenerateError("orthonormalize_flag: Y has zero length");
  const Vector y1 = y / std::sqrt(yy);
  const Vector rest = u - u.dot(gram * y1) * y1;
  const double rr = rest.dot(gram * rest);
  const double uu = u.dot(gram * u);
  if (!(rr > 1e-24 * std::max(1.0, uu))) throw DegenerateError("orthonormalize_flag: Y and U are linearly dependent");
  return {y1, rest / std::sqrt(rr), true};
}

}  // namespace mkropina
