#pragma once

#include "mkropina/core.hpp"

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace mkropina {

/// One nonzero structure constant: [e_i, e_j] has coefficient `value` on e_k.
struct StructureConstant {
  int i = 0;
  int j = 0;
  int k = 0;
  double value = 0.0;
};

/// A finite-dimensional real Lie algebra given by structure constants
/// c[i][j][k], so that [x, y]_k = sum_ij x_i y_j c[i][j][k].
class LieAlgebra {
 public:
  /// Builds the algebra from a sparse list with i < j; the entries for
  /// j > i are filled in by antisymmetry.
  LieAlgebra(int dim, const std::vector<StructureConstant>& sparse,
             std::vector<std::string> labels = {})
      : dim_(dim), c_(static_cast<std::size_t>(dim) * dim * dim, 0.0), labels_(std::move(labels)) {
    if (dim <= 0) throw DimensionError("Lie algebra dimension must be positive");
    for (const auto& s : sparse) {
      if (s.i < 0 || s.j < 0 || s.k < 0 || s.i >= dim || s.j >= dim || s.k >= dim) {
        throw DimensionError("structure constant index out of range");
      }
      if (s.i >= s.j) throw ValidationError("sparse structure constants require i < j");
      at(s.i, s.j, s.k) += s.value;
      at(s.j, s.i, s.k) -= s.value;
    }
    fill_labels();
  }

  /// Dense constructor; `constants` is indexed (i * n + j) * n + k and must be
  /// antisymmetric in (i, j).
  static LieAlgebra from_dense(int dim, std::vector<double> constants,
                               std::vector<std::string> labels = {}) {
    if (dim <= 0 || constants.size() != static_cast<std::size_t>(dim) * dim * dim) {
      throw DimensionError("dense structure constants have the wrong size");
    }
    LieAlgebra alg(dim, {}, std::move(labels));
    alg.c_ = std::move(constants);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k)
          if (std::abs(alg.constant(i, j, k) + alg.constant(j, i, k)) > kStructureTolerance) {
            throw ValidationError("structure constants are not antisymmetric");
          }
    return alg;
  }

  int dim() const { return dim_; }
  double constant(int i, int j, int k) const { return c_[index(i, j, k)]; }
  const std::vector<std::string>& labels() const { return labels_; }

  Vector basis(int i) const { return Vector::Unit(dim_, i); }

  Vector bracket(const Vector& x, const Vector& y) const {
    detail::require_size(x, dim_, "bracket");
    detail::require_size(y, dim_, "bracket");
    Vector out = Vector::Zero(dim_);
    for (int i = 0; i < dim_; ++i) {
      if (x[i] == 0.0) continue;
      for (int j = 0; j < dim_; ++j) {
        const double w = x[i] * y[j];
        if (w == 0.0) continue;
        const double* row = &c_[index(i, j, 0)];
        for (int k = 0; k < dim_; ++k) out[k] += w * row[k];
      }
    }
    return out;
  }

  /// Matrix of ad(x) = [x, .].
  Matrix ad(const Vector& x) const {
    Matrix m(dim_, dim_);
    for (int j = 0; j < dim_; ++j) m.col(j) = bracket(x, basis(j));
    return m;
  }

  std::string describe(const std::vector<int>& tuple) const {
    std::string s = "(";
    for (std::size_t t = 0; t < tuple.size(); ++t) {
      if (t) s += ",";
      s += labels_.at(static_cast<std::size_t>(tuple[t]));
    }
    return s + ")";
  }

 private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * dim_ + j) * dim_ + k;
  }
  double& at(int i, int j, int k) { return c_[index(i, j, k)]; }

  void fill_labels() {
    if (labels_.empty()) {
      for (int i = 0; i < dim_; ++i) labels_.push_back("e" + std::to_string(i));
    } else if (labels_.size() != static_cast<std::size_t>(dim_)) {
      throw DimensionError("label count does not match dimension");
    }
  }

  int dim_;
  std::vector<double> c_;
  std::vector<std::string> labels_;
};

namespace presets {

/// su(2) with [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2 (storage indices 0, 1, 2).
inline LieAlgebra su2() {
  return LieAlgebra(3, {{0, 1, 2, 1.0}, {1, 2, 0, 1.0}, {0, 2, 1, -1.0}}, {"e1", "e2", "e3"});
}

/// u(2) = R e0 + su(2), e0 central.
inline LieAlgebra u2() {
  return LieAlgebra(4, {{1, 2, 3, 1.0}, {2, 3, 1, 1.0}, {1, 3, 2, -1.0}}, {"e0", "e1", "e2", "e3"});
}

inline LieAlgebra abelian(int n) { return LieAlgebra(n, {}); }

/// "su2", "u2" or "abelian_<n>".
inline LieAlgebra by_name(std::string_view name) {
  if (name == "su2") return su2();
  if (name == "u2") return u2();
  constexpr std::string_view prefix = "abelian_";
  if (name.substr(0, prefix.size()) == prefix) {
    const std::string digits(name.substr(prefix.size()));
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit)) {
      return abelian(std::stoi(digits));
    }
  }
  throw ValidationError("unknown algebra preset '" + std::string(name) + "'");
}

}  // namespace presets

/// Worst Jacobi defect over basis triples i < j < k (the identity is
/// alternating, so these cover every triple).
inline ValidationReport check_jacobi(const LieAlgebra& alg, double tolerance = kStructureTolerance) {
  const int n = alg.dim();
  detail::WorstCase worst;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const Vector x = alg.basis(i), y = alg.basis(j), z = alg.basis(k);
        const Vector defect = alg.bracket(x, alg.bracket(y, z)) + alg.bracket(y, alg.bracket(z, x)) +
                              alg.bracket(z, alg.bracket(x, y));
        worst.offer(defect.cwiseAbs().maxCoeff(), {i, j, k});
      }
  auto r = worst.report(tolerance, "Jacobi identity");
  if (!r.passed) r.detail += " fails at " + alg.describe(r.witness);
  return r;
}

enum class Part { m, h };

/// Basis-adapted split g = h + m: both parts are spanned by subsets of the basis.
class ReductiveDecomposition {
 public:
  ReductiveDecomposition(int dim, std::vector<int> h_indices, std::vector<int> m_indices)
      : dim_(dim), h_(std::move(h_indices)), m_(std::move(m_indices)), in_h_(dim, false) {
    std::vector<int> seen(dim, 0);
    for (int i : h_) {
      if (i < 0 || i >= dim) throw DimensionError("h index out of range");
      ++seen[i];
      in_h_[i] = true;
    }
    for (int i : m_) {
      if (i < 0 || i >= dim) throw DimensionError("m index out of range");
      ++seen[i];
    }
    for (int i = 0; i < dim; ++i) {
      if (seen[i] != 1) {
        throw DimensionError("h and m indices must partition {0,...,n-1}; index " +
                             std::to_string(i) + " covered " + std::to_string(seen[i]) + " times");
      }
    }
    if (m_.empty()) throw DimensionError("m must be nonempty");
  }

  /// m is the complement of h, in increasing order.
  static ReductiveDecomposition from_h(int dim, std::vector<int> h_indices) {
    std::vector<int> m;
    for (int i = 0; i < dim; ++i)
      if (std::find(h_indices.begin(), h_indices.end(), i) == h_indices.end()) m.push_back(i);
    return ReductiveDecomposition(dim, std::move(h_indices), std::move(m));
  }

  int dim() const { return dim_; }
  const std::vector<int>& h_indices() const { return h_; }
  const std::vector<int>& m_indices() const { return m_; }
  bool in_h(int i) const { return in_h_[static_cast<std::size_t>(i)]; }
  bool trivial_isotropy() const { return h_.empty(); }

  Vector project(const Vector& x, Part part) const {
    detail::require_size(x, dim_, "project");
    Vector out = x;
    for (int i = 0; i < dim_; ++i)
      if (in_h(i) == (part == Part::m)) out[i] = 0.0;
    return out;
  }
  Vector m_part(const Vector& x) const { return project(x, Part::m); }
  Vector h_part(const Vector& x) const { return project(x, Part::h); }

  /// Largest coefficient of x outside m.
  double h_content(const Vector& x) const { return h_part(x).cwiseAbs().maxCoeff(); }

 private:
  int dim_;
  std::vector<int> h_;
  std::vector<int> m_;
  std::vector<bool> in_h_;
};

/// [h,h] in h and [h,m] in m, checked on basis pairs.
inline ValidationReport check_ad_invariance(const LieAlgebra& alg, const ReductiveDecomposition& dec,
                                            double tolerance = kStructureTolerance) {
  if (alg.dim() != dec.dim()) throw DimensionError("decomposition does not match algebra");
  detail::WorstCase worst;
  for (int a : dec.h_indices()) {
    for (int b = 0; b < alg.dim(); ++b) {
      const Vector br = alg.bracket(alg.basis(a), alg.basis(b));
      const Part target = dec.in_h(b) ? Part::h : Part::m;
      const Vector stray = dec.project(br, target == Part::h ? Part::m : Part::h);
      worst.offer(stray.cwiseAbs().maxCoeff(), {a, b});
    }
  }
  auto r = worst.report(tolerance, "ad(h)-invariance");
  if (!r.passed) r.detail += " fails at " + alg.describe(r.witness);
  return r;
}

/// <<[z,x],y>> + <<x,[z,y]>> = 0 over basis triples (z, x, y).
inline ValidationReport check_bi_invariance(const LieAlgebra& alg, const Matrix& gram0,
                                            double tolerance = kStructureTolerance) {
  const int n = alg.dim();
  if (gram0.rows() != n || gram0.cols() != n) throw DimensionError("gram0 has the wrong size");
  std::vector<Matrix> ads;
  for (int z = 0; z < n; ++z) ads.push_back(alg.ad(alg.basis(z)));
  detail::WorstCase worst;
  for (int z = 0; z < n; ++z) {
    // ad(z) is skew-adjoint iff ad(z)^T G + G ad(z) vanishes.
    const Matrix defect = ads[z].transpose() * gram0 + gram0 * ads[z];
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) worst.offer(std::abs(defect(x, y)), {z, x, y});
  }
  auto r = worst.report(tolerance, "bi-invariance");
  if (!r.passed) r.detail += " fails at " + alg.describe(r.witness);
  return r;
}

inline bool is_symmetric(const Matrix& a, double tolerance = kStructureTolerance) {
  return a.rows() == a.cols() && (a - a.transpose()).cwiseAbs().maxCoeff() <= tolerance;
}

inline bool is_positive_definite(const Matrix& a) {
  if (a.rows() == 0 || !is_symmetric(a)) return false;
  Eigen::LLT<Matrix> llt(a);
  return llt.info() == Eigen::Success;
}

struct Endomorphism {
  Matrix endo;
  Matrix inverse;
};

/// The operator Phi with <x,z> = <<Phi x, z>>, i.e. Phi = gram0^{-1} gram.
inline Endomorphism metric_endomorphism(const Matrix& gram0, const Matrix& gram) {
  if (gram0.rows() != gram0.cols() || gram.rows() != gram.cols() || gram0.rows() != gram.rows()) {
    throw DimensionError("metric_endomorphism: matrices must be square and of equal size");
  }
  Eigen::FullPivLU<Matrix> lu0(gram0);
  if (!lu0.isInvertible()) throw DegenerateError("metric_endomorphism: gram0 is singular");
  Eigen::FullPivLU<Matrix> lu(gram);
  if (!lu.isInvertible()) throw DegenerateError("metric_endomorphism: gram is singular");
  return {lu0.solve(gram), lu.solve(gram0)};
}

/// Bi-invariant <<.,.>>, invariant <.,.> (extended to g by gram0 on h with
/// h orthogonal to m), and the endomorphism linking them.
class InnerProductPair {
 public:
  InnerProductPair(Matrix gram0, Matrix gram) : gram0_(std::move(gram0)), gram_(std::move(gram)) {
    if (!is_positive_definite(gram0_)) throw ValidationError("gram0 is not symmetric positive definite");
    if (!is_positive_definite(gram_)) throw ValidationError("gram is not symmetric positive definite");
    auto e = metric_endomorphism(gram0_, gram_);
    endo_ = std::move(e.endo);
    endo_inv_ = std::move(e.inverse);
  }

  /// Extends the m-metric `gram_m` (indexed by dec.m_indices()) to all of g.
  static InnerProductPair extend(const ReductiveDecomposition& dec, Matrix gram0, const Matrix& gram_m) {
    const auto& mi = dec.m_indices();
    const auto& hi = dec.h_indices();
    const auto mm = static_cast<Eigen::Index>(mi.size());
    if (gram_m.rows() != mm || gram_m.cols() != mm) throw DimensionError("gram_m has the wrong size");
    if (gram0.rows() != dec.dim() || gram0.cols() != dec.dim()) throw DimensionError("gram0 has the wrong size");
    if (!is_positive_definite(gram_m)) throw ValidationError("gram_m is not symmetric positive definite");
    Matrix gram = Matrix::Zero(dec.dim(), dec.dim());
    for (Eigen::Index a = 0; a < mm; ++a)
      for (Eigen::Index b = 0; b < mm; ++b) gram(mi[a], mi[b]) = gram_m(a, b);
    for (int a : hi)
      for (int b : hi) gram(a, b) = gram0(a, b);
    return InnerProductPair(std::move(gram0), std::move(gram));
  }

  const Matrix& gram0() const { return gram0_; }
  const Matrix& gram() const { return gram_; }
  const Matrix& endo() const { return endo_; }
  const Matrix& endo_inverse() const { return endo_inv_; }

  double inner(const Vector& a, const Vector& b) const { return a.dot(gram_ * b); }
  double inner0(const Vector& a, const Vector& b) const { return a.dot(gram0_ * b); }

  /// || gram0 * endo - endo^T * gram0 ||, zero when endo is gram0-self-adjoint.
  double self_adjointness_defect() const {
    return (gram0_ * endo_ - endo_.transpose() * gram0_).cwiseAbs().maxCoeff();
  }

 private:
  Matrix gram0_;
  Matrix gram_;
  Matrix endo_;
  Matrix endo_inv_;
};

/// Everything the curvature formulas need about G/H at the origin.
struct HomogeneousSpace {
  LieAlgebra algebra;
  ReductiveDecomposition decomposition;
  InnerProductPair metric;

  HomogeneousSpace(LieAlgebra alg, ReductiveDecomposition dec, InnerProductPair pair)
      : algebra(std::move(alg)), decomposition(std::move(dec)), metric(std::move(pair)) {
    if (algebra.dim() != decomposition.dim() || metric.gram().rows() != algebra.dim()) {
      throw DimensionError("algebra, decomposition and metric dimensions disagree");
    }
  }

  int dim() const { return algebra.dim(); }
  Vector bracket(const Vector& x, const Vector& y) const { return algebra.bracket(x, y); }
  Vector bracket_m(const Vector& x, const Vector& y) const {
    return decomposition.m_part(algebra.bracket(x, y));
  }
  Vector bracket_h(const Vector& x, const Vector& y) const {
    return decomposition.h_part(algebra.bracket(x, y));
  }
  double inner(const Vector& a, const Vector& b) const { return metric.inner(a, b); }
  double inner0(const Vector& a, const Vector& b) const { return metric.inner0(a, b); }
};

}  // namespace mkropina
