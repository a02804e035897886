#pragma once

#include "mkropina/mkropina.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace fixtures {

using mkropina::Matrix;
using mkropina::Vector;

inline Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

inline Matrix diag(std::initializer_list<double> values) { return vec(values).asDiagonal(); }

/// A homogeneous space plus a metric on it, built the way a scenario is.
struct Setup {
  mkropina::HomogeneousSpace space;
  mkropina::MKropinaMetric metric;

  Setup(mkropina::LieAlgebra alg, std::vector<int> h, const Matrix& gram0, const Matrix& gram_m, double m,
        const Vector& x, mkropina::NormBound bound = mkropina::NormBound::strict)
      : space(build(std::move(alg), std::move(h), gram0, gram_m)), metric(m, x, space.metric.gram(), bound) {}

  const std::vector<int>& m_indices() const { return space.decomposition.m_indices(); }

 private:
  static mkropina::HomogeneousSpace build(mkropina::LieAlgebra alg, std::vector<int> h, const Matrix& gram0,
                                          const Matrix& gram_m) {
    const int n = alg.dim();
    auto dec = mkropina::ReductiveDecomposition::from_h(n, std::move(h));
    auto pair = mkropina::InnerProductPair::extend(dec, gram0, gram_m);
    return {std::move(alg), std::move(dec), std::move(pair)};
  }
};

inline const double kHalfRoot2 = std::sqrt(0.5);

/// u(2), trivial isotropy, identity metrics, X = 0.8 e0.
inline Setup u2_central(double m = 1.0) {
  return Setup(mkropina::presets::u2(), {}, Matrix::Identity(4, 4), Matrix::Identity(4, 4), m,
               vec({0.8, 0, 0, 0}));
}

inline Vector flag_a_y() { return vec({kHalfRoot2, 0, kHalfRoot2, 0}); }
inline Vector flag_a_u() { return vec({0, 1, 0, 0}); }
inline Vector flag_b_u() { return vec({kHalfRoot2, 0, -kHalfRoot2, 0}); }

inline mkropina::Flag flag_a() { return {flag_a_y(), flag_a_u(), true}; }
inline mkropina::Flag flag_b() { return {flag_a_y(), flag_b_u(), true}; }

/// su(2) with the bi-invariant identity metric.
inline Setup su2_bi_invariant(double m = 1.0, Vector x = vec({0, 0, 0.5})) {
  return Setup(mkropina::presets::su2(), {}, Matrix::Identity(3, 3), Matrix::Identity(3, 3), m, x);
}

/// u(2) with <.,.> = diag(1.7, .6, .6, .6): naturally reductive, Phi != I.
inline Setup u2_scaled(double m = 0.5) {
  return Setup(mkropina::presets::u2(), {}, Matrix::Identity(4, 4), diag({1.7, 0.6, 0.6, 0.6}), m,
               vec({0.5, 0, 0, 0}));
}

/// u(2) with a generic metric on su(2) and X central: X parallel, the
/// metric not naturally reductive.
inline Setup u2_random_block(double m = 2.0) {
  Matrix g = Matrix::Zero(4, 4);
  g(0, 0) = 1.44;
  g.block(1, 1, 3, 3) << 1.1, 0.2, -0.1, 0.2, 0.8, 0.15, -0.1, 0.15, 1.3;
  return Setup(mkropina::presets::u2(), {}, Matrix::Identity(4, 4), g, m, vec({0.5, 0, 0, 0}));
}

inline std::string scenario_path(const std::string& name) { return std::string(MKROPINA_SCENARIO_DIR) + "/" + name; }
inline std::string test_data_path(const std::string& name) { return std::string(MKROPINA_TEST_DATA_DIR) + "/" + name; }

}  // namespace fixtures
