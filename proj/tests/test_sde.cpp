#include <gtest/gtest.h>

#include <cmath>

#include "tridyson/gbe.hpp"
#include "tridyson/sde.hpp"

using namespace tridyson;

namespace {

BesselState start(double x) {
  BesselState s;
  s.value = x;
  return s;
}
SdeConfig base() {
  SdeConfig c;
  c.n = 3;
  c.alpha = {3, 3};
  c.x0 = {1, 1};
  c.dt = 0.01;
  c.t_end = 0.5;
  c.seed = 42;
  return c;
}
}  // namespace

TEST(SdeConfig, ValidateRejectsBadInput) {
  auto c = base();
  EXPECT_NO_THROW(c.validate());
  c.alpha = {3};
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = base();
  c.x0 = {1, -1};
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = base();
  c.dt = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = base();
  c.diag0 = {0, 0};
  EXPECT_THROW(c.validate(), std::invalid_argument);
  EXPECT_EQ(base().steps(), 50U);
}

TEST(Scheme, ParseRoundTrip) {
  for (auto s : {Scheme::kEulerMaruyama, Scheme::kExactSquaredBessel})
    EXPECT_EQ(parse_scheme(to_string(s)), s);
  EXPECT_THROW(parse_scheme("milstein"), std::invalid_argument);
}

TEST(Noise, DeterministicPerPathIndex) {
  const auto c = base();
  EXPECT_EQ(make_noise(c, 3), make_noise(c, 3));
  EXPECT_NE(make_noise(c, 3), make_noise(c, 4));
  auto other = c;
  other.seed = 43;
  EXPECT_NE(make_noise(c, 3), make_noise(other, 3));
}

TEST(Noise, IncrementsHaveVarianceDt) {
  auto c = base();
  c.n = 2;
  c.alpha = {3};
  c.x0 = {1};
  c.dt = 1e-3;
  c.t_end = 20.0;
  const auto g = make_noise(c, 0);
  std::vector<double> sq;
  for (double x : g.diag_data()) sq.push_back(x * x);
  const auto m = MomentEstimate::of(sq);
  EXPECT_LT(m.z(c.dt), 4.0);
}

TEST(Noise, RefineThenCoarsenRecoversIncrements) {
  const auto coarse = make_noise(base(), 1);
  const auto fine = refine(coarse, 42, 1);
  EXPECT_EQ(fine.steps(), 2 * coarse.steps());
  EXPECT_DOUBLE_EQ(fine.dt(), coarse.dt() / 2);
  const auto back = coarsen(fine);
  for (std::size_t m = 0; m < coarse.steps(); ++m) {
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(back.diag(m, k), coarse.diag(m, k), 1e-15);
    for (std::size_t k = 0; k < 2; ++k) EXPECT_NEAR(back.off(m, k), coarse.off(m, k), 1e-15);
  }
  NoiseGrid odd(3, 2, 0.1);
  EXPECT_THROW(coarsen(odd), std::invalid_argument);
}

TEST(Noise, BridgeHalvesHaveVarianceHalfDt) {
  auto c = base();
  c.dt = 0.02;
  c.t_end = 200.0;
  const auto fine = refine(make_noise(c, 0), c.seed, 0);
  std::vector<double> sq;
  for (double x : fine.diag_data()) sq.push_back(x * x);
  EXPECT_LT(MomentEstimate::of(sq).z(0.01), 4.0);
}

TEST(BesselStep, EulerMaruyamaDriftAndFloor) {
  const auto s = bessel_step(start(1.0), 3.0, 0.01, 0.0);
  EXPECT_DOUBLE_EQ(s.value, 1.0 + 0.5 * 2.0 * 0.01 / 1.0);
  // Below sqrt(dt) the drift uses the floor.
  const auto f = bessel_step(start(0.01), 3.0, 0.01, 0.0);
  EXPECT_DOUBLE_EQ(f.value, 0.01 + 0.5 * 2.0 * 0.01 / 0.1);
}

TEST(BesselStep, AbsorbsBelowTwoReflectsAtOrAbove) {
  const auto a = bessel_step(start(0.1), 0.5, 0.01, -0.3, 2.0);
  EXPECT_TRUE(a.absorbed);
  EXPECT_EQ(a.value, 0.0);
  ASSERT_TRUE(a.absorption_time);
  EXPECT_GT(*a.absorption_time, 2.0);
  EXPECT_LT(*a.absorption_time, 2.01);
  EXPECT_THROW(bessel_step(a, 0.5, 0.01, 0.0), AbsorbedError);

  const auto r = bessel_step(start(0.1), 2.0, 0.01, -0.3);
  EXPECT_FALSE(r.absorbed);
  EXPECT_GT(r.value, 0.0);
}

TEST(BesselStep, ExactTransitionSecondMoment) {
  // E[X_t^2] = x^2 + alpha t for the squared Bessel process.
  Engine eng = make_stream(1, 0, StreamTag::kExactBessel);
  for (double x0 : {0.0, 0.7}) {
    std::vector<double> sq;
    for (int i = 0; i < 20000; ++i) {
      const auto s = bessel_step_exact(start(x0), 2.5, 0.4, eng);
      sq.push_back(s.value * s.value);
    }
    EXPECT_LT(MomentEstimate::of(sq).z(x0 * x0 + 2.5 * 0.4), 4.0) << "x0=" << x0;
  }
}

TEST(BesselStep, EulerMaruyamaAbsorptionStatisticsBelowTwo) {
  // alpha = 0.5 from 0.1 hits zero quickly with high probability.
  int absorbed = 0;
  for (int p = 0; p < 200; ++p) {
    Engine eng = make_stream(5, p, StreamTag::kNoise);
    std::normal_distribution<double> normal(0.0, std::sqrt(1e-3));
    BesselState s = start(0.1);
    for (int m = 0; m < 1000 && !s.absorbed; ++m) s = bessel_step(s, 0.5, 1e-3, normal(eng), m * 1e-3);
    absorbed += s.absorbed;
  }
  EXPECT_GT(absorbed, 100);
}
