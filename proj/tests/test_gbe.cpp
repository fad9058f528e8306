#include <gtest/gtest.h>

#include <cmath>

#include "tridyson/gbe.hpp"

using namespace tridyson;

namespace {
// E[g^2] for the n = 2 gap density proportional to g^beta exp(-beta g^2 / 8) on g > 0,
// by composite Simpson quadrature.
double gap_square_quadrature(double beta) {
  const int m = 20000;
  const double hi = 40.0 / std::sqrt(beta), h = hi / m;
  double num = 0.0, den = 0.0;
  for (int k = 0; k <= m; ++k) {
    const double g = k * h;
    const double w = (k == 0 || k == m) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    const double dens = std::pow(g, beta) * std::exp(-beta * g * g / 8.0);
    num += w * g * g * dens;
    den += w * dens;
  }
  return num / den;
}
}  // namespace

TEST(Gbe, ConfigValidation) {
  EXPECT_THROW(sample_gbe({2, 0.0, 10, 0}, 0), std::invalid_argument);
  EXPECT_THROW(sample_gbe({2, 1.0, 0, 0}, 0), std::invalid_argument);
  EXPECT_EQ(sample_gbe({1, 1.0, 1, 0}, 0).size(), 1U);
}

TEST(Gbe, DeterministicPerIndex) {
  GbeConfig c{4, 1.5, 10, 3};
  EXPECT_EQ(sample_gbe(c, 2), sample_gbe(c, 2));
  EXPECT_NE(sample_gbe(c, 2), sample_gbe(c, 3));
}

TEST(Gbe, DiagonalMomentsOfFirstEntry) {
  GbeConfig c{3, 2.0, 10000, 4};
  std::vector<double> x, x2;
  for (std::size_t s = 0; s < c.samples; ++s) {
    const double a = sample_gbe(c, s).diag()[0];
    x.push_back(a);
    x2.push_back(a * a);
  }
  EXPECT_LT(MomentEstimate::of(x).z(0.0), 3.0);
  EXPECT_LT(MomentEstimate::of(x2).z(2.0 / c.beta), 3.0);
}

TEST(Gbe, LargeBetaConcentration) {
  GbeConfig c{4, 400.0, 200, 5};
  for (std::size_t s = 0; s < c.samples; ++s) {
    const auto h = sample_gbe(c, s);
    for (std::size_t k = 1; k < 4; ++k) EXPECT_NEAR(h.offdiag()[k - 1], std::sqrt(4.0 - k), 0.3);
  }
}

TEST(Gbe, TraceSquareMoment) {
  EXPECT_DOUBLE_EQ(expected_trace_square(2, 2.0), 4.0);
  for (auto [n, beta] : {std::pair<std::size_t, double>{3, 0.5}, {4, 1.0}, {4, 2.0}}) {
    const auto r = trace_moment_check({n, beta, 10000, 6});
    EXPECT_TRUE(r.passed()) << "n=" << n << " beta=" << beta << " z=" << r.z;
  }
}

TEST(Gbe, TwoByTwoGapMomentAgainstQuadrature) {
  for (double beta : {0.5, 1.0, 2.0, 4.0}) {
    const double ref = gap_square_quadrature(beta);
    EXPECT_NEAR(ref, 4.0 * (beta + 1.0) / beta, 1e-4 * ref);
    const auto est = gap_square_n2({2, beta, 20000, 7});
    EXPECT_LT(est.z(ref), 3.0) << "beta=" << beta;
  }
}

TEST(TimeSlice, MatchesEnsembleAtZeroStart) {
  const auto r = time_slice_check(3, 1.0, 10000, 8);
  EXPECT_EQ(r.comparisons.size(), 10U);
  EXPECT_TRUE(r.passed()) << r.failures();
}

TEST(TimeSlice, SmallestCaseSecondMomentIsOne) {
  const auto r = time_slice_check(2, 2.0, 10000, 9);
  EXPECT_TRUE(r.passed());
  for (const auto& c : r.comparisons)
    if (c.entry == "o1" && c.moment == 2) {
      EXPECT_NEAR(c.process, 1.0, 0.05);
    }
}
