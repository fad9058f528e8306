#include <gtest/gtest.h>

#include "tridyson/dense.hpp"
#include "tridyson/rational.hpp"

using namespace tridyson;

TEST(Polynomial, TrimsAndReportsDegree) {
  RationalPoly p(std::vector<Rational>{1, 2, 0, 0});
  EXPECT_EQ(p.degree(), 1);
  EXPECT_TRUE(RationalPoly(0L).is_zero());
  EXPECT_EQ(RationalPoly(0L).degree(), -1);
}

TEST(Polynomial, ArithmeticAndEvaluation) {
  const auto x = RationalPoly::variable();
  const RationalPoly p = (x - RationalPoly(1L)) * (x + RationalPoly(2L));  // x^2 + x - 2
  EXPECT_EQ(p, RationalPoly(std::vector<Rational>{-2, 1, 1}));
  EXPECT_EQ(p(Rational(1)), 0);
  EXPECT_EQ(p(make_rational(1, 2)), make_rational(-5, 4));
  EXPECT_EQ(p.derivative(), RationalPoly(std::vector<Rational>{1, 2}));
  EXPECT_TRUE((p - p).is_zero());
}

TEST(Polynomial, DivmodRoundTrip) {
  const RationalPoly a(std::vector<Rational>{3, -1, 0, 2, 5});
  const RationalPoly d(std::vector<Rational>{make_rational(1, 3), 7});
  auto [q, r] = a.divmod(d);
  EXPECT_LT(r.degree(), d.degree());
  EXPECT_EQ(q * d + r, a);
  EXPECT_THROW(a.divmod(RationalPoly{}), std::domain_error);
  EXPECT_THROW(exact_div(a, d), std::logic_error);
  EXPECT_EQ(exact_div(a * d, d), a);
}

TEST(DenseDet, SmallHandExpansions) {
  EXPECT_EQ(dense_det(Matrix<Rational>(0, 0)), 1);
  EXPECT_EQ(dense_det(Matrix<Rational>{{2, 3}, {4, 5}}), -2);
  // Needs a row swap: zero leading pivot.
  EXPECT_EQ(dense_det(Matrix<Rational>{{0, 1, 2}, {1, 0, 3}, {4, -3, 8}}), -2);
  EXPECT_EQ(dense_det(Matrix<Rational>{{1, 1, 0}, {0, 0, 1}, {0, 1, 2}}), -1);
  EXPECT_DOUBLE_EQ(dense_det(Matrix<double>{{0, 1, 2}, {1, 0, 3}, {4, -3, 8}}), -2.0);
}

TEST(DenseDet, PolynomialEntriesMatchLeibniz) {
  const auto x = RationalPoly::variable();
  Matrix<RationalPoly> m{{x, RationalPoly(1L)}, {RationalPoly(1L), x}};
  EXPECT_EQ(dense_det(m), x * x - RationalPoly(1L));
  Matrix<RationalPoly> z{{RationalPoly(0L), x}, {x, RationalPoly(0L)}};
  EXPECT_EQ(dense_det(z), -(x * x));
}

TEST(DenseMatrix, WithoutAndSelect) {
  Matrix<Rational> m{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
  auto w = m.without({1}, {0});
  EXPECT_EQ(w, (Matrix<Rational>{{2, 3}, {8, 9}}));
  auto s = m.select({0, 2}, {1});
  EXPECT_EQ(s, (Matrix<Rational>{{2}, {8}}));
  EXPECT_EQ(Matrix<Rational>::identity(3) * m, m);
}
