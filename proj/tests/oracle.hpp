#pragma once

// Reference computations written without the library: brackets as cross
// products, g_Y from the generic (alpha,beta)-metric Hessian formula, flag
// curvature from those two. Tests compare the library against these.

#include <Eigen/Dense>

#include <cmath>

namespace oracle {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// su(2) with [e1,e2] = e3 and cyclic: the cross product.
inline Vec su2_bracket(const Vec& x, const Vec& y) {
  const Eigen::Vector3d a(x[0], x[1], x[2]), b(y[0], y[1], y[2]);
  return a.cross(b);
}

/// u(2) = R e0 + su(2) with e0 central.
inline Vec u2_bracket(const Vec& x, const Vec& y) {
  Vec out = Vec::Zero(4);
  out.tail(3) = su2_bracket(x.tail(3), y.tail(3));
  return out;
}

/// Hessian of F^2/2 for F = alpha phi(beta/alpha), phi(s) = s^-m, through
///   g = rho a + rho0 b b + rho1 (b a_y + a_y b) + rho2 a_y a_y,
/// with a_y the gradient of alpha and b the covector of beta.
inline Mat kropina_hessian(const Mat& a, const Vec& x, double m, const Vec& y) {
  const Vec b = a * x;
  const double alpha = std::sqrt(y.dot(a * y));
  const double s = b.dot(y) / alpha;
  const double p = std::pow(s, -m);
  const double p1 = -m * std::pow(s, -m - 1.0);
  const double p2 = m * (m + 1.0) * std::pow(s, -m - 2.0);
  const double rho = p * (p - s * p1);
  const double rho0 = p * p2 + p1 * p1;
  const double rho1 = -(s * rho0 - p * p1);
  const double rho2 = s * (s * rho0 - p * p1);
  const Vec ay = a * y / alpha;
  return rho * a + rho0 * b * b.transpose() + rho1 * (b * ay.transpose() + ay * b.transpose()) +
         rho2 * ay * ay.transpose();
}

/// F(y)^2 straight from the definition.
inline double kropina_norm_squared(const Mat& a, const Vec& x, double m, const Vec& y) {
  const double alpha = std::sqrt(y.dot(a * y));
  const double beta = x.dot(a * y);
  const double f = std::pow(alpha, m + 1.0) / std::pow(beta, m);
  return f * f;
}

/// Flag curvature on u(2) with the identity metric, H trivial and X
/// central, where the connection is the bi-invariant one and
/// R(U,Y)Y = 1/4 [Y,[U,Y]].
inline double u2_flag_curvature(const Vec& x, double m, const Vec& y, const Vec& u) {
  const Mat a = Mat::Identity(4, 4);
  const Mat g = kropina_hessian(a, x, m, y);
  const Vec r = 0.25 * u2_bracket(y, u2_bracket(u, y));
  const double den = y.dot(g * y) * u.dot(g * u) - std::pow(y.dot(g * u), 2);
  return u.dot(g * r) / den;
}

}  // namespace oracle
