#include <gtest/gtest.h>

#include "tridyson/identities.hpp"

using namespace tridyson;

namespace {
void expect_pass(const IdentityReport& r) {
  EXPECT_TRUE(r.passed()) << r.name << ": " << (r.counterexamples.empty() ? "" : r.counterexamples[0]);
}
}  // namespace

TEST(CharpolyDerivatives, TwoByTwoSymbolic) {
  // f = (l - a1)(l - a2) - b^2; df/db = -2b.
  RationalTridiag h({3, make_rational(1, 2)}, {5});
  expect_pass(check_prop_derif(h));
  EXPECT_EQ(detail::dfdb(h, 1), RationalPoly(-10L));
  EXPECT_EQ(detail::dfda(h, 1), -(RationalPoly::variable() - RationalPoly(make_rational(1, 2))));
}

TEST(CharpolyDerivatives, DiagonalMatrix) {
  RationalTridiag h({1, 2, 3}, {0, 0});
  expect_pass(check_prop_derif(h));
  const auto x = RationalPoly::variable();
  const RationalPoly one(1L), two(2L), three(3L);
  EXPECT_EQ(charpoly(h).derivative(),
            (x - two) * (x - three) + (x - one) * (x - three) + (x - one) * (x - two));
}

TEST(CharpolyDerivatives, RandomInstances) { expect_pass(run_prop_derif({40, 7, 1})); }

TEST(DeterminantEntryDerivative, TwoByTwoByHand) {
  // det [[a,b],[b,c]] = ac - b^2: d/da = c, d/db = -2b = (-1)^{1+2} 2 det(A_{1|2}).
  Matrix<Rational> a{{2, 3}, {3, 7}};
  expect_pass(check_lemma_3_1(a));
  EXPECT_EQ(dense_det(a.without({0}, {1})), 3);
}

TEST(DeterminantEntryDerivative, RandomSymmetricFourByFour) {
  Engine eng = make_stream(31, 0, StreamTag::kIdentities);
  for (int i = 0; i < 200; ++i) expect_pass(check_lemma_3_1(random_symmetric_rational(4, eng)));
}

TEST(DeterminantEntryDerivative, DiagonalCofactor) {
  Matrix<Rational> a{{2, 0, 0}, {0, 3, 0}, {0, 0, 5}};
  expect_pass(check_lemma_3_1(a));
  EXPECT_EQ(dense_det(a.without({1}, {1})), 10);
}

TEST(ZeroPatternDeterminant, LiteralHypothesisCounterexample) {
  const auto a = lemma_3_2_literal_counterexample();
  EXPECT_EQ(dense_det(a), -1);
  const auto rep = check_lemma_3_2_scope(a, 2);
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.metrics.at("literal_counterexamples"), 1.0);
}

TEST(ZeroPatternDeterminant, StrengthenedHypothesisGivesZero) {
  Matrix<Rational> a{{1, 1, 0}, {0, 0, 1}, {0, 0, 2}};
  EXPECT_EQ(dense_det(a), 0);
  const auto rep = check_lemma_3_2_scope(a, 2);
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.metrics.at("strengthened_instances"), 1.0);
  Matrix<Rational> no{{1, 1, 0}, {1, 0, 1}, {0, 0, 2}};
  EXPECT_THROW(check_lemma_3_2_scope(no, 2), std::invalid_argument);
}

TEST(ZeroPatternDeterminant, RandomStrengthenedInstances) {
  const auto rep = run_lemma_3_2_scope({100, 7, 2});
  expect_pass(rep);
  EXPECT_EQ(rep.instances, 100U);
  EXPECT_GE(rep.metrics.at("literal_counterexamples"), 1.0);
}

TEST(AdjacentDeletedMinor, ThreeByThreeByHand) {
  // k = 1: both sides equal -b_1 (l - a_3).
  RationalTridiag h({1, 2, 3}, {5, 7});
  expect_pass(check_det1(h));
  const auto a = detail::shifted_poly(h);
  const auto x = RationalPoly::variable();
  EXPECT_EQ(detail::deleted_det(a, {1}, {2}), RationalPoly(-5L) * (x - RationalPoly(3L)));
  // k = n - 1 boundary: -b_2 (l - a_1).
  EXPECT_EQ(detail::deleted_det(a, {2}, {3}), RationalPoly(-7L) * (x - RationalPoly(1L)));
}

TEST(AdjacentDeletedMinor, RandomUpToEight) { expect_pass(run_det1({60, 8, 3})); }

TEST(GradientSquareIdentity, TwoByTwoAndDiagonal) {
  expect_pass(check_lemma_3_3(RationalTridiag({make_rational(2, 3), -1}, {4})));
  expect_pass(check_lemma_3_3(RationalTridiag({1, 2, 3, 4}, {0, 0, 0})));
}

TEST(GradientSquareIdentity, RandomInstances) { expect_pass(run_lemma_3_3({40, 7, 4})); }

TEST(GradientSquareIdentity, FailsWhenGradientWeightIsWrong) {
  // Guard against a vacuous check: drop the factor 2 on the diagonal gradient.
  RationalTridiag h({1, 2, 3}, {5, 7});
  RationalPoly grad;
  for (int k = 1; k <= 3; ++k) grad += detail::dfda(h, k) * detail::dfda(h, k);
  for (int k = 1; k <= 2; ++k) grad += detail::dfdb(h, k) * detail::dfdb(h, k);
  const auto f = charpoly(h);
  const auto lhs = f.derivative() * f.derivative() - RationalPoly(make_rational(1, 2)) * grad;
  RationalPoly lap;
  for (int k = 1; k <= 2; ++k) lap += detail::d2fdb2(h, k);
  const auto a = detail::shifted_poly(h);
  const auto rhs = -(f * lap) + RationalPoly(2L) * detail::deleted_det(a, {1}, {1}) * detail::deleted_det(a, {3}, {3});
  EXPECT_NE(lhs, rhs);
}

TEST(DriftAsMinorRatio, CubicByHand) {
  // Roots (0,1,3) at lambda = 1: f''/f' = 1 = 2/(1-0) + 2/(1-3).
  SymTridiag<double> h({0, 1, 3}, {0, 0});
  const auto d = charpoly_derivs_from_minors(h, 1.0);
  EXPECT_DOUBLE_EQ(d.d2 / d.d1, 1.0);
}

TEST(DriftAsMinorRatio, RandomFloat) { expect_pass(run_lemma_a1({100, 7, 5})); }

TEST(CharpolyFromPrincipalMinors, RandomAndHand) {
  expect_pass(check_lemma_a2(Matrix<Rational>{{1, 2}, {3, 4}}));
  expect_pass(run_lemma_a2({40, 6, 6}));
}

TEST(TwiceCofactorExpansion, AllPairsOnRandomSymmetric) { expect_pass(run_lemma_a3({30, 6, 7})); }

TEST(TwiceCofactorExpansion, AlsoHoldsOnGeneralMatrix) {
  Engine eng = make_stream(33, 0, StreamTag::kIdentities);
  expect_pass(check_lemma_a3(random_rational_matrix(5, 5, eng)));
}

TEST(CauchyBinet, IdentityFactorsGiveKronecker) {
  const auto i3 = Matrix<Rational>::identity(3);
  expect_pass(check_lemma_a4(i3, i3));
  EXPECT_EQ(dense_det(i3.select({0, 1}, {0, 2})), 0);
  EXPECT_EQ(dense_det(i3.select({0, 2}, {0, 2})), 1);
}

TEST(CauchyBinet, RandomRectangular) { expect_pass(run_lemma_a4({30, 5, 8})); }

TEST(SylvesterIdentity, DiagonalHandCase) {
  Matrix<Rational> a{{1, 0, 0}, {0, 2, 0}, {0, 0, 3}};
  expect_pass(check_lemma_a5(a));
  EXPECT_EQ(dense_det(a) * dense_det(a.without({0, 1}, {0, 1})), 18);
}

TEST(SylvesterIdentity, RandomSquare) { expect_pass(run_lemma_a5({40, 6, 9})); }

TEST(StrictInterlacingCheck, RandomCoupled) { expect_pass(run_lemma_a6({100, 10, 10})); }

TEST(Suite, FullRunHasZeroFailures) {
  for (const auto& r : run_identity_suite({20, 7, 11})) expect_pass(r);
}

TEST(Report, MergeKeepsMaximaAndCounts) {
  IdentityReport a("x"), b("x");
  a.record(true, "");
  b.record(false, "bad");
  a.metrics["max_err"] = 1;
  b.metrics["max_err"] = 3;
  a.merge(b);
  EXPECT_EQ(a.instances, 2U);
  EXPECT_EQ(a.failures, 1U);
  EXPECT_EQ(a.metrics["max_err"], 3);
  EXPECT_EQ(a.counterexamples.size(), 1U);
}
