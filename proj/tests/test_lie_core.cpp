#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracle.hpp"

using namespace mkropina;
using fixtures::vec;

TEST(LieAlgebra, Su2BracketsAreCyclic) {
  const auto alg = presets::su2();
  EXPECT_TRUE(alg.bracket(alg.basis(0), alg.basis(1)).isApprox(alg.basis(2)));
  EXPECT_TRUE(alg.bracket(alg.basis(1), alg.basis(2)).isApprox(alg.basis(0)));
  EXPECT_TRUE(alg.bracket(alg.basis(2), alg.basis(0)).isApprox(alg.basis(1)));
  EXPECT_EQ(alg.describe({0, 1, 2}), "(e1,e2,e3)");
}

TEST(LieAlgebra, BracketsMatchCrossProduct) {
  const auto su2 = presets::su2();
  const auto u2 = presets::u2();
  for (int t = 0; t < 20; ++t) {
    const Vector x = Vector::Random(4), y = Vector::Random(4);
    EXPECT_LT((u2.bracket(x, y) - oracle::u2_bracket(x, y)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((su2.bracket(x.head(3), y.head(3)) - oracle::su2_bracket(x.head(3), y.head(3))).cwiseAbs().maxCoeff(),
              1e-15);
  }
}

TEST(LieAlgebra, U2CenterCommutesWithEverything) {
  const auto alg = presets::u2();
  for (int j = 0; j < 4; ++j) EXPECT_EQ(alg.bracket(alg.basis(0), alg.basis(j)).cwiseAbs().maxCoeff(), 0.0);
}

TEST(LieAlgebra, ByName) {
  EXPECT_EQ(presets::by_name("abelian_4").dim(), 4);
  EXPECT_EQ(presets::by_name("u2").dim(), 4);
  EXPECT_THROW(presets::by_name("so5"), ValidationError);
  EXPECT_THROW(presets::by_name("abelian_x"), ValidationError);
}

TEST(LieAlgebra, SparseConstantsNeedIncreasingPair) {
  EXPECT_THROW(LieAlgebra(3, {{1, 0, 2, 1.0}}), ValidationError);
  EXPECT_THROW(LieAlgebra(3, {{0, 1, 3, 1.0}}), DimensionError);
}

TEST(LieAlgebra, DenseConstantsMustBeAntisymmetric) {
  std::vector<double> c(8, 0.0);
  c[(0 * 2 + 1) * 2 + 0] = 1.0;  // [e0,e1] = e0 without the matching [e1,e0]
  EXPECT_THROW(LieAlgebra::from_dense(2, c), ValidationError);
  c[(1 * 2 + 0) * 2 + 0] = -1.0;
  EXPECT_NO_THROW(LieAlgebra::from_dense(2, c));
}

TEST(Jacobi, PresetsPass) {
  for (const char* name : {"su2", "u2", "abelian_3"}) {
    const auto r = check_jacobi(presets::by_name(name));
    EXPECT_TRUE(r.passed) << name;
    EXPECT_TRUE(r.witness.empty());
  }
}

TEST(Jacobi, RescaledThreeDimensionalAlgebraStillPasses) {
  // Every algebra [e1,e2]=a e3, [e2,e3]=b e1, [e3,e1]=c e2 satisfies Jacobi,
  // so rescaling one constant does not break it.
  const LieAlgebra alg(3, {{0, 1, 2, 1.1}, {1, 2, 0, 1.0}, {0, 2, 1, -1.0}}, {"e1", "e2", "e3"});
  EXPECT_TRUE(check_jacobi(alg).passed);
}

TEST(Jacobi, PerturbedSu2FailsWithWitness) {
  // [e1,e2] = e3 + 0.1 e1
  const LieAlgebra alg(3, {{0, 1, 2, 1.0}, {0, 1, 0, 0.1}, {1, 2, 0, 1.0}, {0, 2, 1, -1.0}}, {"e1", "e2", "e3"});
  const auto r = check_jacobi(alg);
  EXPECT_FALSE(r.passed);
  EXPECT_EQ(r.witness, (std::vector<int>{0, 1, 2}));
  EXPECT_NEAR(r.residual, 0.1, 1e-15);
  EXPECT_NE(r.detail.find("(e1,e2,e3)"), std::string::npos);
}

TEST(Decomposition, Partition) {
  EXPECT_NO_THROW(ReductiveDecomposition(4, {3}, {0, 1, 2}));
  EXPECT_THROW(ReductiveDecomposition(4, {3}, {0, 1}), DimensionError);
  EXPECT_THROW(ReductiveDecomposition(4, {3}, {0, 1, 2, 3}), DimensionError);
  EXPECT_THROW(ReductiveDecomposition(2, {0, 1}, {}), DimensionError);
  EXPECT_THROW(ReductiveDecomposition(2, {2}, {0, 1}), DimensionError);
  const auto dec = ReductiveDecomposition::from_h(4, {3});
  EXPECT_EQ(dec.m_indices(), (std::vector<int>{0, 1, 2}));
  const Vector v = vec({1, 2, 3, 4});
  EXPECT_EQ(dec.m_part(v), vec({1, 2, 3, 0}));
  EXPECT_EQ(dec.h_part(v), vec({0, 0, 0, 4}));
  EXPECT_EQ(dec.h_content(v), 4.0);
}

TEST(Decomposition, AdInvariance) {
  const auto alg = presets::u2();
  EXPECT_TRUE(check_ad_invariance(alg, ReductiveDecomposition::from_h(4, {3})).passed);
  EXPECT_TRUE(check_ad_invariance(alg, ReductiveDecomposition::from_h(4, {})).passed);
  const auto bad = check_ad_invariance(alg, ReductiveDecomposition::from_h(4, {1, 2}));
  EXPECT_FALSE(bad.passed);
  EXPECT_EQ(bad.witness, (std::vector<int>{1, 2}));  // [e1,e2] = e3 leaves h
}

TEST(BiInvariance, IdentityOnSu2) {
  EXPECT_TRUE(check_bi_invariance(presets::su2(), Matrix::Identity(3, 3)).passed);
  EXPECT_TRUE(check_bi_invariance(presets::u2(), fixtures::diag({5, 1, 1, 1})).passed);
  const auto r = check_bi_invariance(presets::su2(), fixtures::diag({1, 1, 2}));
  EXPECT_FALSE(r.passed);
  EXPECT_NEAR(r.residual, 1.0, 1e-15);
}

TEST(InnerProducts, EndomorphismAndExtension) {
  const auto dec = ReductiveDecomposition::from_h(4, {3});
  const auto pair = InnerProductPair::extend(dec, fixtures::diag({1, 1, 1, 1}), fixtures::diag({2, 3, 4}));
  EXPECT_EQ(pair.gram(), fixtures::diag({2, 3, 4, 1}));
  EXPECT_TRUE(pair.endo().isApprox(fixtures::diag({2, 3, 4, 1})));
  EXPECT_TRUE((pair.endo() * pair.endo_inverse()).isApprox(Matrix::Identity(4, 4)));
  EXPECT_LT(pair.self_adjointness_defect(), 1e-15);
  EXPECT_THROW(InnerProductPair::extend(dec, Matrix::Identity(4, 4), fixtures::diag({1, 0, 1})), ValidationError);
  EXPECT_THROW(metric_endomorphism(Matrix::Zero(2, 2), Matrix::Identity(2, 2)), DegenerateError);
}
