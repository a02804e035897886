#pragma once

#include "mkropina/lie_core.hpp"

#include <string_view>

namespace mkropina {

enum class BackendKind { puttmann, naturally_reductive, bi_invariant };

inline std::string_view to_string(BackendKind k) {
  switch (k) {
    case BackendKind::puttmann: return "puttmann";
    case BackendKind::naturally_reductive: return "naturally_reductive";
    case BackendKind::bi_invariant: return "bi_invariant";
  }
  return "?";
}

inline BackendKind backend_from_string(std::string_view s) {
  if (s == "puttmann") return BackendKind::puttmann;
  if (s == "naturally_reductive" || s == "natred") return BackendKind::naturally_reductive;
  if (s == "bi_invariant" || s == "biinv") return BackendKind::bi_invariant;
  throw ValidationError("unknown curvature backend '" + std::string(s) + "'");
}

/// Which inner product the bracket terms coming from the invariant-metric
/// curvature formula use inside the two inner products <X,R(U,Y)Y> and
/// <U,R(U,Y)Y>. `uniform` uses <.,.> everywhere, as those two expansions are
/// usually written down. `mixed` uses the bi-invariant <<.,.>> in the slots
/// where the general formula has it, which keeps them equal to that formula
/// when Phi is not the identity.
enum class ProductReading { mixed, uniform };

inline ProductReading reading_from_string(std::string_view s) {
  if (s == "mixed") return ProductReading::mixed;
  if (s == "uniform") return ProductReading::uniform;
  throw ValidationError("unknown product reading '" + std::string(s) + "'");
}

inline std::string_view to_string(ProductReading r) { return r == ProductReading::mixed ? "mixed" : "uniform"; }

/// sigma multiplies the invariant-metric formula; -1 makes it agree with the
/// naturally reductive and bi-invariant formulas (positive curvature on
/// compact groups).
struct CurvatureBackend {
  BackendKind kind = BackendKind::naturally_reductive;
  double sigma = -1.0;

  CurvatureBackend() = default;
  CurvatureBackend(BackendKind k, double s = -1.0) : kind(k), sigma(s) {
    if (s != 1.0 && s != -1.0) throw ValidationError("sigma must be +1 or -1");
  }
};

/// B+(x,y) = 1/2([x,Phi y] + [y,Phi x]).
inline Vector b_plus(const HomogeneousSpace& space, const Vector& x, const Vector& y) {
  const Matrix& phi = space.metric.endo();
  return 0.5 * (space.bracket(x, phi * y) + space.bracket(y, phi * x));
}

/// B-(x,y) = 1/2([Phi x,y] + [x,Phi y]).
inline Vector b_minus(const HomogeneousSpace& space, const Vector& x, const Vector& y) {
  const Matrix& phi = space.metric.endo();
  return 0.5 * (space.bracket(phi * x, y) + space.bracket(x, phi * y));
}

/// <R(x,y)z, w> for the invariant metric <.,.> on G/H, times sigma.
inline double puttmann_scalar(const HomogeneousSpace& space, const Vector& x, const Vector& y, const Vector& z,
                              const Vector& w, double sigma = -1.0) {
  const auto& pair = space.metric;
  const Matrix& phi_inv = pair.endo_inverse();
  const auto br = [&](const Vector& a, const Vector& b) { return space.bracket(a, b); };
  const auto br_m = [&](const Vector& a, const Vector& b) { return space.bracket_m(a, b); };

  double v = 0.5 * (pair.inner0(b_minus(space, x, y), br(z, w)) + pair.inner0(br(x, y), b_minus(space, z, w)));
  v += 0.25 * (pair.inner(br(x, w), br_m(y, z)) - pair.inner(br(x, z), br_m(y, w)) -
               2.0 * pair.inner(br(x, y), br_m(z, w)));
  v += pair.inner0(b_plus(space, x, w), phi_inv * b_plus(space, y, z)) -
       pair.inner0(b_plus(space, x, z), phi_inv * b_plus(space, y, w));
  return sigma * v;
}

namespace detail {

inline void require_in_m(const HomogeneousSpace& space, const Vector& v, const char* what) {
  detail::require_size(v, space.dim(), what);
  if (space.decomposition.h_content(v) > 1e-12 * std::max(1.0, v.cwiseAbs().maxCoeff())) {
    throw PreconditionError(std::string(what) + ": argument has a component in h");
  }
}

}  // namespace detail

/// R(x,y)y = 1/4 [y,[x,y]_m]_m + [y,[x,y]_h] for a naturally reductive metric.
inline Vector natred_curvature(const HomogeneousSpace& space, const Vector& x, const Vector& y) {
  detail::require_in_m(space, x, "natred_curvature");
  detail::require_in_m(space, y, "natred_curvature");
  const Vector xy = space.bracket(x, y);
  const auto& dec = space.decomposition;
  return 0.25 * dec.m_part(space.bracket(y, dec.m_part(xy))) + space.bracket(y, dec.h_part(xy));
}

/// R(x,y)y = 1/4 [y,[x,y]] for a bi-invariant metric on a group.
inline Vector biinv_curvature(const LieAlgebra& alg, const Vector& x, const Vector& y) {
  return 0.25 * alg.bracket(y, alg.bracket(x, y));
}

/// R(u,y)y as a vector of m, from the chosen backend.
inline Vector curvature_vector(const HomogeneousSpace& space, const CurvatureBackend& backend, const Vector& u,
                               const Vector& y) {
  switch (backend.kind) {
    case BackendKind::naturally_reductive: return natred_curvature(space, u, y);
    case BackendKind::bi_invariant: return biinv_curvature(space.algebra, u, y);
    case BackendKind::puttmann: break;
  }
  // Recover the vector from its inner products with the basis of m.
  const auto& mi = space.decomposition.m_indices();
  const auto k = static_cast<Eigen::Index>(mi.size());
  Matrix gram_mm(k, k);
  Vector rhs(k);
  for (Eigen::Index a = 0; a < k; ++a) {
    rhs[a] = puttmann_scalar(space, u, y, y, space.algebra.basis(mi[a]), backend.sigma);
    for (Eigen::Index b = 0; b < k; ++b) gram_mm(a, b) = space.metric.gram()(mi[a], mi[b]);
  }
  const Vector coeffs = gram_mm.llt().solve(rhs);
  Vector out = Vector::Zero(space.dim());
  for (Eigen::Index a = 0; a < k; ++a) out[mi[a]] = coeffs[a];
  return out;
}

struct CurvatureProducts {
  /// <X, R(U,Y)Y>
  double x_r = 0.0;
  /// <U, R(U,Y)Y>
  double u_r = 0.0;
};

/// The two bracket expansions of <X,R(U,Y)Y> and <U,R(U,Y)Y> for an
/// invariant metric with Phi = gram0^{-1} gram, each multiplied by sigma.
inline CurvatureProducts thm31_inner_products(const HomogeneousSpace& space, const Vector& x, const Vector& u,
                                              const Vector& y, double sigma = -1.0,
                                              ProductReading reading = ProductReading::mixed) {
  detail::require_in_m(space, u, "thm31_inner_products");
  detail::require_in_m(space, y, "thm31_inner_products");
  const auto& pair = space.metric;
  const Matrix& phi = pair.endo();
  const Matrix& phi_inv = pair.endo_inverse();
  const auto br = [&](const Vector& a, const Vector& b) { return space.bracket(a, b); };
  const auto outer = [&](const Vector& a, const Vector& b) {
    return reading == ProductReading::mixed ? pair.inner0(a, b) : pair.inner(a, b);
  };
  const Vector pu = phi * u, py = phi * y, px = phi * x;
  const Vector y_py = phi_inv * br(y, py);
  const Vector u_py_y_pu = br(u, py) + br(y, pu);

  CurvatureProducts out;
  out.x_r = -0.25 * (outer(br(pu, y) + br(u, py), br(y, x)) + outer(br(u, y), br(py, x) + br(y, px))) -
            0.75 * pair.inner(br(y, u), space.bracket_m(y, x)) - 0.5 * outer(br(u, px) + br(x, pu), y_py) +
            0.25 * outer(u_py_y_pu, phi_inv * (br(y, px) + br(x, py)));
  out.u_r = 0.5 * outer(br(pu, y) + br(u, py), br(y, u)) + 0.75 * pair.inner(br(y, u), space.bracket_m(y, u)) +
            outer(br(u, pu), y_py) - 0.25 * outer(u_py_y_pu, phi_inv * (br(y, pu) + br(u, py)));
  out.x_r *= sigma;
  out.u_r *= sigma;
  return out;
}

}  // namespace mkropina
