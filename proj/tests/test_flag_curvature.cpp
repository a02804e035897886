#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracle.hpp"

using namespace mkropina;
using fixtures::vec;

namespace {

const CurvatureBackend kNatred(BackendKind::naturally_reductive);
const CurvatureBackend kPuttmann(BackendKind::puttmann);

bool has_note(const FlagCurvatureReport& r, const std::string& needle) {
  for (const auto& n : r.notes)
    if (n.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST(Orthonormalize, Examples) {
  const Matrix id = Matrix::Identity(4, 4);
  const auto f = orthonormalize_flag(id, vec({0, 0, 2, 0}), vec({0, 1, 1, 0}));
  EXPECT_LT((f.y - vec({0, 0, 1, 0})).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((f.u - vec({0, 1, 0, 0})).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_TRUE(f.orthonormal);
  EXPECT_THROW(orthonormalize_flag(id, vec({0, 0, 2, 0}), vec({0, 0, 6, 0})), DegenerateError);
  EXPECT_THROW(orthonormalize_flag(id, Vector::Zero(4), vec({0, 0, 6, 0})), DegenerateError);
  const Matrix g = fixtures::diag({2, 1, 3, 1});
  const auto h = orthonormalize_flag(g, vec({1, 1, 0, 0}), vec({0, 1, 1, 0}));
  EXPECT_TRUE(is_orthonormal(g, h.y, h.u));
}

TEST(FlagCurvature, FlagAAllMethods) {
  const auto s = fixtures::u2_central();
  const auto flag = fixtures::flag_a();
  EXPECT_NEAR(flag_curvature_general(s.space, s.metric, kNatred, flag).k, 0.04, 1e-12);
  EXPECT_NEAR(flag_curvature_general(s.space, s.metric, kPuttmann, flag).k, 0.04, 1e-12);
  EXPECT_NEAR(flag_curvature_thm31(s.space, s.metric, flag).k, 0.04, 1e-12);
  EXPECT_NEAR(flag_curvature_natred(s.space, s.metric, flag).k, 0.04, 1e-12);
  EXPECT_NEAR(flag_curvature_biinv(s.space, s.metric, flag).k, 0.04, 1e-12);
  EXPECT_NEAR(flag_curvature_general(s.space, s.metric, kNatred, flag, TensorSource::fd_oracle).k, 0.04, 1e-6);
  EXPECT_NEAR(oracle::u2_flag_curvature(s.metric.x(), 1.0, flag.y, flag.u), 0.04, 1e-12);
}

TEST(FlagCurvature, FlagBIsFlat) {
  const auto s = fixtures::u2_central();
  const auto flag = fixtures::flag_b();
  EXPECT_NEAR(flag_curvature_general(s.space, s.metric, kNatred, flag).k, 0.0, 1e-14);
  EXPECT_NEAR(flag_curvature_thm31(s.space, s.metric, flag).k, 0.0, 1e-14);
  EXPECT_NEAR(flag_curvature_natred(s.space, s.metric, flag).k, 0.0, 1e-14);
  EXPECT_NEAR(flag_curvature_biinv(s.space, s.metric, flag).k, 0.0, 1e-14);
}

TEST(FlagCurvature, ExponentTwo) {
  const auto s = fixtures::u2_central(2.0);
  EXPECT_NEAR(flag_curvature_biinv(s.space, s.metric, fixtures::flag_a()).k, 0.0128, 1e-12);
  EXPECT_NEAR(flag_curvature_general(s.space, s.metric, kPuttmann, fixtures::flag_a()).k, 0.0128, 1e-12);
}

TEST(FlagCurvature, FormulaAtZeroExponentIsRiemannian) {
  // m = 0 gives back the sectional curvature 1/4 of su(2).
  const auto s = fixtures::su2_bi_invariant();
  const Vector e1 = vec({1, 0, 0}), e2 = vec({0, 1, 0});
  const auto p = thm31_inner_products(s.space, s.metric.x(), e2, e1);
  EXPECT_NEAR(curvature_from_products(0.0, 0.3, 0.2, p.u_r, p.x_r).k, 0.25, 1e-15);
  EXPECT_THROW(curvature_from_products(-1.0, 0.3, 0.2, p.u_r, p.x_r), DegenerateError);
}

TEST(FlagCurvature, AbelianIsFlat) {
  const fixtures::Setup s(presets::abelian(4), {}, Matrix::Identity(4, 4), Matrix::Identity(4, 4), 1.0,
                          vec({0.5, 0, 0, 0}));
  for (const auto& flag : sample_flags(s.metric, s.m_indices(), 10, 7)) {
    EXPECT_EQ(flag_curvature_general(s.space, s.metric, kPuttmann, flag).k, 0.0);
    EXPECT_EQ(flag_curvature_thm31(s.space, s.metric, flag).k, 0.0);
    EXPECT_EQ(flag_curvature_biinv(s.space, s.metric, flag).k, 0.0);
  }
}

TEST(FlagCurvature, DependsOnlyOnPlaneAndPole) {
  const auto s = fixtures::u2_central();
  const Vector y = fixtures::flag_a_y(), u = fixtures::flag_a_u();
  for (const Flag& f : {Flag{y, u + 0.7 * y, false}, Flag{3.0 * y, u, false}, Flag{y, -2.0 * u, false}}) {
    EXPECT_NEAR(flag_curvature_general(s.space, s.metric, kNatred, f).k, 0.04, 1e-12);
    const auto thm = flag_curvature_thm31(s.space, s.metric, f);
    EXPECT_NEAR(thm.k, 0.04, 1e-12);
    EXPECT_TRUE(has_note(thm, "orthonormalized"));
  }
}

TEST(FlagCurvature, MatchesOracleOnSampledFlags) {
  for (double m : {1.0, 2.0, 0.5, -0.5}) {
    const auto s = fixtures::u2_central(m);
    for (const auto& f : sample_flags(s.metric, s.m_indices(), 50, 21)) {
      const double ref = oracle::u2_flag_curvature(s.metric.x(), m, f.y, f.u);
      const double tol = 1e-10 * std::max(1.0, std::abs(ref));
      EXPECT_NEAR(flag_curvature_general(s.space, s.metric, kNatred, f).k, ref, tol);
      EXPECT_NEAR(flag_curvature_thm31(s.space, s.metric, f).k, ref, tol);
      EXPECT_NEAR(flag_curvature_natred(s.space, s.metric, f).k, ref, tol);
      EXPECT_NEAR(flag_curvature_biinv(s.space, s.metric, f).k, ref, tol);
    }
  }
}

TEST(FlagCurvature, ProductFormAgreesWithGeneralOnGenericMetric) {
  for (double m : {2.0, -0.5}) {
    const auto s = fixtures::u2_random_block(m);
    for (const auto& f : sample_flags(s.metric, s.m_indices(), 30, 5)) {
      const double general = flag_curvature_general(s.space, s.metric, kPuttmann, f).k;
      EXPECT_LE(detail::relative_gap(flag_curvature_thm31(s.space, s.metric, f).k, general), 1e-10);
    }
  }
}

TEST(FlagCurvature, InadmissibleFlagsThrow) {
  const auto s = fixtures::u2_central();
  EXPECT_THROW(flag_curvature_general(s.space, s.metric, kNatred, Flag{vec({0, 1, 0, 0}), vec({0, 0, 1, 0}), true}),
               DomainError);
  EXPECT_THROW(flag_curvature_thm31(s.space, s.metric, Flag{fixtures::flag_a_y(), 2.0 * fixtures::flag_a_y(), false}),
               DomainError);
}

TEST(FlagCurvature, NotesWhenHypothesesFail) {
  const auto s = fixtures::su2_bi_invariant(1.0, vec({0, 0, 0.5}));
  const Flag f{vec({0.2, 0.1, 1}), vec({1, 0, 0}), false};
  EXPECT_TRUE(has_note(flag_curvature_general(s.space, s.metric, kNatred, f), "not parallel"));
  const auto sq = fixtures::Setup(presets::su2(), {}, Matrix::Identity(3, 3), fixtures::diag({1, 1, 2}), 1.0,
                                  vec({0, 0, 0.5}));
  EXPECT_TRUE(has_note(flag_curvature_natred(sq.space, sq.metric, f), "not naturally reductive"));
  EXPECT_TRUE(has_note(flag_curvature_biinv(sq.space, sq.metric, f), "not bi-invariant"));
}

TEST(FlagCurvature, IsotropyTermInsideQuarterUndercounts) {
  // u(2)/U(1) with h = span{e3}: [U,Y] lies in h, so the bracket formula
  // with the h term inside the factor 1/4 gives a quarter of the true value.
  const fixtures::Setup s(presets::u2(), {3}, Matrix::Identity(4, 4), Matrix::Identity(3, 3), 1.0,
                          vec({0.8, 0, 0, 0}));
  const Flag f{vec({fixtures::kHalfRoot2, 0, fixtures::kHalfRoot2, 0}), vec({0, 1, 0, 0}), true};
  ASSERT_TRUE(check_riemannian_natred(s.space).passed());
  const double general = flag_curvature_general(s.space, s.metric, kNatred, f).k;
  EXPECT_NEAR(general, 0.16, 1e-12);
  EXPECT_NEAR(flag_curvature_general(s.space, s.metric, kPuttmann, f).k, 0.16, 1e-12);
  EXPECT_NEAR(flag_curvature_thm31(s.space, s.metric, f).k, 0.16, 1e-12);
  EXPECT_NEAR(flag_curvature_natred(s.space, s.metric, f).k, 0.04, 1e-12);
}

TEST(FlagCurvature, GeneralFormulaDependsOnEdgeWithoutParallelField) {
  // X = 0.2 e1 + 0.5 e3 on the squashed su(2) is not parallel: <X,R(U,Y)Y> != 0, so
  // replacing U by U + Y changes the value.
  const auto s = fixtures::Setup(presets::su2(), {}, Matrix::Identity(3, 3), fixtures::diag({1, 1, 2}), 1.0,
                                 vec({0.2, 0, 0.5}));
  const Flag f = orthonormalize_flag(s.metric.gram(), vec({0.3, 0.2, 1}), vec({1, 0.4, 0}));
  ASSERT_FALSE(check_parallel_condition(s.space, s.metric).passed);
  const double k = flag_curvature_general(s.space, s.metric, kPuttmann, f).k;
  const double shifted = flag_curvature_general(s.space, s.metric, kPuttmann, Flag{f.y, f.u + f.y, false}).k;
  EXPECT_GT(detail::relative_gap(shifted, k), 1e-6);
}
