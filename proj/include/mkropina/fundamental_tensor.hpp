#pragma once

#include "mkropina/metric.hpp"
#include "mkropina/parallel_condition.hpp"

#include <array>
#include <cmath>
#include <functional>

namespace mkropina {

/// A base direction Y together with the scalars every tensor formula needs.
class TensorEvalContext {
 public:
  TensorEvalContext(const MKropinaMetric& met, Vector y) : met_(&met), y_(std::move(y)) {
    detail::require_size(y_, met.dim(), "TensorEvalContext");
    yy_ = met.inner(y_, y_);
    xy_ = met.inner(met.x(), y_);
    if (!(xy_ > 0.0)) {
      throw DomainError("fundamental tensor: <X,Y> = " + std::to_string(xy_) + " is outside the cone");
    }
  }

  const MKropinaMetric& metric() const { return *met_; }
  const Vector& y() const { return y_; }
  double yy() const { return yy_; }
  double xy() const { return xy_; }

 private:
  const MKropinaMetric* met_;
  Vector y_;
  double yy_ = 0.0;
  double xy_ = 0.0;
};

/// g_Y(U,V), the Hessian of F^2/2, in closed form.
inline double g_closed(const TensorEvalContext& ctx, const Vector& u, const Vector& v) {
  const auto& met = ctx.metric();
  const double m = met.exponent();
  const double a = ctx.yy();
  const double b = ctx.xy();
  const Vector& y = ctx.y();
  const double uy = met.inner(u, y), vy = met.inner(v, y);
  const double xu = met.inner(met.x(), u), xv = met.inner(met.x(), v);
  const double uv = met.inner(u, v);
  const double k = 2.0 * m * (m + 1.0);
  const double body = k * b * b * uy * vy - k * b * a * (uy * xv + xu * vy) +
                      (m + 1.0) * b * b * a * uv + m * (2.0 * m + 1.0) * a * a * xu * xv;
  return std::pow(a, m - 1.0) / std::pow(b, 2.0 * m + 2.0) * body;
}

/// The shortened form of g_Y valid for unit Y and first argument orthogonal
/// to Y. As a bilinear expression it is not symmetric, so both orders are
/// kept; `value` is their average.
struct OrthonormalForm {
  double value = 0.0;
  double forward = 0.0;   // expression evaluated at (U, V)
  double backward = 0.0;  // expression evaluated at (V, U)
  bool asymmetric = false;
};

inline OrthonormalForm g_orthonormal(const TensorEvalContext& ctx, const Vector& u, const Vector& v) {
  if (std::abs(ctx.yy() - 1.0) > 1e-10) {
    throw PreconditionError("g_orthonormal: <Y,Y> must be 1, got " + std::to_string(ctx.yy()));
  }
  const auto& met = ctx.metric();
  const double m = met.exponent();
  const double b = ctx.xy();
  const auto shortened = [&](const Vector& p, const Vector& q) {
    const double xp = met.inner(met.x(), p), xq = met.inner(met.x(), q);
    return ((m + 1.0) * b * b * met.inner(p, q) - 2.0 * m * (m + 1.0) * b * xp * met.inner(ctx.y(), q) +
            m * (2.0 * m + 1.0) * xp * xq) /
           std::pow(b, 2.0 * m + 2.0);
  };
  OrthonormalForm out;
  out.forward = shortened(u, v);
  out.backward = shortened(v, u);
  out.value = 0.5 * (out.forward + out.backward);
  out.asymmetric = detail::relative_gap(out.forward, out.backward) > 1e-12;
  return out;
}

namespace detail {

/// Step policy shared by all finite differences: h = 1e-4 max(1, |Y|), halved
/// until every stencil point keeps at least half of beta(Y).
inline double cone_safe_step(const MKropinaMetric& met, const Vector& y, double beta_reach, double requested) {
  const auto [alpha, beta] = met.alpha_beta(y);
  if (!(beta > 0.0)) throw DomainError("finite difference: base point is outside the cone");
  double h = requested > 0.0 ? requested : 1e-4 * std::max(1.0, alpha);
  for (int halvings = 0; h * beta_reach > 0.5 * beta; ++halvings) {
    if (requested > 0.0 || halvings > 60) {
      throw DomainError("finite difference: stencil leaves the cone beta > 0");
    }
    h *= 0.5;
  }
  return h;
}

}  // namespace detail

/// Finite-difference estimate of 1/2 d^2/ds dt F^2(Y + sU + tV) at s = t = 0:
/// four-point central mixed difference, one Richardson level, O(h^4).
inline double g_fd_oracle(const MKropinaMetric& met, const Vector& y, const Vector& u, const Vector& v,
                          double step = 0.0) {
  const double reach = std::abs(met.inner(met.x(), u)) + std::abs(met.inner(met.x(), v));
  const double h = detail::cone_safe_step(met, y, reach, step);
  const auto mixed = [&](double s) {
    return (met.norm_squared(y + s * u + s * v) - met.norm_squared(y + s * u - s * v) -
            met.norm_squared(y - s * u + s * v) + met.norm_squared(y - s * u - s * v)) /
           (4.0 * s * s);
  };
  const double coarse = mixed(h);
  const double fine = mixed(0.5 * h);
  return 0.5 * (4.0 * fine - coarse) / 3.0;
}

/// Central difference of f along a line with two Richardson levels, O(h^6).
inline double richardson_derivative(const std::function<double(double)>& f, double h) {
  std::array<double, 3> d{};
  for (int level = 0; level < 3; ++level) {
    const double s = h / static_cast<double>(1 << level);
    d[level] = (f(s) - f(-s)) / (2.0 * s);
  }
  const double r1 = (4.0 * d[1] - d[0]) / 3.0;
  const double r2 = (4.0 * d[2] - d[1]) / 3.0;
  return (16.0 * r2 - r1) / 15.0;
}

/// C_Y(Z,U,V) = 1/2 d/dt g_{Y+tV}(Z,U) at t = 0, differentiating the closed
/// form of g along V.
inline double cartan(const MKropinaMetric& met, const Vector& y, const Vector& z, const Vector& u,
                     const Vector& v, double step = 0.0) {
  const double h = detail::cone_safe_step(met, y, std::abs(met.inner(met.x(), v)), step);
  const auto along = [&](double t) { return g_closed(TensorEvalContext(met, y + t * v), z, u); };
  return 0.5 * richardson_derivative(along, h);
}

/// Closed expression for 2 C_Y([Z,Y]_m, U, V). It only equals the Cartan
/// tensor when X is parallel and <[Z,Y]_m, Y> = 0; both are reported.
struct CartanPattern {
  double value = 0.0;
  bool parallel = false;
  /// |<[Z,Y]_m, Y>| relative to |[Z,Y]_m| |Y|.
  double bracket_pole_overlap = 0.0;
  bool bracket_orthogonal = false;

  bool preconditions_met() const { return parallel && bracket_orthogonal; }
};

inline CartanPattern cartan_pattern_closed(const HomogeneousSpace& space, const MKropinaMetric& met,
                                           const Vector& z, const Vector& y, const Vector& u,
                                           const Vector& v) {
  const TensorEvalContext ctx(met, y);
  const double m = met.exponent();
  const double a = ctx.yy();
  const double b = ctx.xy();
  const Vector w = space.bracket_m(z, y);
  const double xu = met.inner(met.x(), u), xv = met.inner(met.x(), v);

  CartanPattern out;
  out.value = 2.0 * m * (m + 1.0) * std::pow(a, m - 1.0) / std::pow(b, 2.0 * m + 2.0) *
              (met.inner(w, v) * (b * b * met.inner(y, u) - b * xu * a) +
               met.inner(w, u) * (b * b * met.inner(y, v) - b * xv * a));
  out.parallel = check_parallel_condition(space, met).passed;
  const double wn = std::sqrt(met.inner(w, w));
  out.bracket_pole_overlap = wn > 0.0 ? std::abs(met.inner(w, y)) / (wn * std::sqrt(a)) : 0.0;
  out.bracket_orthogonal = out.bracket_pole_overlap <= 1e-10;
  return out;
}

/// Residuals of the orthonormal-flag identities for g_Y(Y,Y), g_Y(U,Y),
/// g_Y(U,U) and the flag-curvature denominator, each as
/// |closed form - identity| / max(1, |identity|).
struct IdentityResiduals {
  double yy = 0.0;
  double uy = 0.0;
  double uu = 0.0;
  double det = 0.0;
  /// g_Y(Y,Y) g_Y(U,U) - g_Y(U,Y)^2 from the closed form.
  double det_value = 0.0;

  double max() const { return std::max({yy, uy, uu, det}); }
};

inline IdentityResiduals eqn_identity_suite(const TensorEvalContext& ctx, const Vector& u) {
  const auto& met = ctx.metric();
  const double uu_ip = met.inner(u, u), uy_ip = met.inner(u, ctx.y());
  if (std::abs(ctx.yy() - 1.0) > 1e-10 || std::abs(uu_ip - 1.0) > 1e-10 || std::abs(uy_ip) > 1e-10) {
    throw PreconditionError("identity suite: {U,Y} must be orthonormal");
  }
  const double m = met.exponent();
  const double b = ctx.xy();
  const double xu = met.inner(met.x(), u);
  const Vector& y = ctx.y();

  const double gyy = g_closed(ctx, y, y);
  const double guy = g_closed(ctx, u, y);
  const double guu = g_closed(ctx, u, u);

  IdentityResiduals r;
  r.det_value = gyy * guu - guy * guy;
  r.yy = detail::relative_gap(gyy, 1.0 / std::pow(b, 2.0 * m));
  r.uy = detail::relative_gap(guy, -m * xu / std::pow(b, 2.0 * m + 1.0));
  r.uu = detail::relative_gap(guu, ((m + 1.0) * b * b + m * (2.0 * m + 1.0) * xu * xu) / std::pow(b, 2.0 * m + 2.0));
  r.det = detail::relative_gap(r.det_value, (m + 1.0) * (m * xu * xu + b * b) / std::pow(b, 4.0 * m + 2.0));
  return r;
}

}  // namespace mkropina
