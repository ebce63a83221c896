#include <gtest/gtest.h>

#include <cmath>

#include <asianlns/model.hpp>

#include "oracles.hpp"

using namespace asianlns;

TEST(Generator, RawSmall) {
  const auto G = generator<double>({0.0, 0.1, 1.0, 1.0, 1.0}, 1, MatrixForm::raw);
  const Matrix<double> D = G.dense();
  EXPECT_EQ(D(0, 0), 0.0);
  EXPECT_EQ(D(0, 1), 0.0);
  EXPECT_EQ(D(1, 0), 1.0);
  EXPECT_EQ(D(1, 1), 0.0);
}

TEST(Generator, RawDiagonalAndSubdiagonal) {
  const auto G = generator<double>({0.05, 0.5, 2.0, 1.0, 1.0}, 2, MatrixForm::raw);
  EXPECT_DOUBLE_EQ(G.diagonal[0], 0.0);
  EXPECT_DOUBLE_EQ(G.diagonal[1], 0.05);
  EXPECT_DOUBLE_EQ(G.diagonal[2], 0.35);
  EXPECT_DOUBLE_EQ(G.subdiagonal[0], 0.5);
  EXPECT_DOUBLE_EQ(G.subdiagonal[1], 1.0);
  const Matrix<double> D = G.dense();
  EXPECT_EQ(D(0, 2), 0.0);
  EXPECT_EQ(D(2, 0), 0.0);
  EXPECT_EQ(D(0, 1), 0.0);
}

TEST(Generator, ScaledSubdiagonal) {
  // Entry (n, n-1) is (n/T) s_{n-1}/s_n = (n/T) exp(-mu + (1 - 2n) nu^2 / 2).
  const double nu = 0.36, nu2 = nu * nu;
  const WeightParams w{-0.1, nu2};
  const auto G = generator<double>({0.05, 0.5, 1.0, 1.0, 1.0}, 2, MatrixForm::scaled, w);
  EXPECT_NEAR(G.subdiagonal[0], std::exp(0.1 - 0.5 * nu2) * 1.0, 1e-15);
  EXPECT_NEAR(G.subdiagonal[1], std::exp(0.1 - 1.5 * nu2) * 2.0, 1e-15);
  const auto R = generator<double>({0.05, 0.5, 1.0, 1.0, 1.0}, 2, MatrixForm::raw);
  EXPECT_EQ(G.diagonal, R.diagonal);
}

TEST(Generator, RejectsBadInput) {
  const MarketParams m{0.05, 0.5, 1.0, 1.0, 1.0};
  EXPECT_THROW(generator<double>(m, -1, MatrixForm::raw), InvalidArgument);
  EXPECT_THROW(generator<double>(m, 3, MatrixForm::scaled), InvalidArgument);
  EXPECT_THROW(generator<double>({0.05, 0.0, 1.0, 1.0, 1.0}, 3, MatrixForm::raw), InvalidArgument);
  EXPECT_THROW(moments<double>(m, 3, MomentKind::relative), InvalidArgument);
}

TEST(Moments, ZeroRateFirstMoment) {
  for (double sigma : {0.1, 0.5, 1.0}) {
    const auto m = moments<double>({0.0, sigma, 1.0, 1.0, 1.0}, 1, MomentKind::raw);
    EXPECT_EQ(m.values[0], 1.0);
    EXPECT_NEAR(m.values[1], 1.0, 1e-15);
  }
}

TEST(Moments, FirstMomentClosedForm) {
  const auto m = moments<double>({0.05, 0.5, 1.0, 1.0, 1.0}, 1, MomentKind::raw);
  const double expect = std::expm1(0.05) / 0.05;
  EXPECT_NEAR(m.values[1], expect, 1e-14);
  EXPECT_NEAR(m.values[1], 1.0254219, 1e-7);
  const auto rk = oracle::moments_rk4(0.05, 0.5, 1.0, 1);
  EXPECT_NEAR(m.values[1], static_cast<double>(rk[1]), 1e-12);
}

TEST(Moments, MatchesRk4Small) {
  const auto m = moments<double>({0.05, 0.5, 1.0, 1.0, 1.0}, 4, MomentKind::raw);
  const auto rk = oracle::moments_rk4(0.05, 0.5, 1.0, 4);
  for (int n = 0; n <= 4; ++n) EXPECT_NEAR(m.values[n] / static_cast<double>(rk[n]), 1.0, 1e-10) << n;
}

TEST(Moments, MatchesRk4UpTo20) {
  struct P { double r, sigma, T; };
  for (const P p : {P{0.02, 0.1, 1.0}, P{0.18, 0.3, 1.0}, P{0.0125, 0.25, 2.0}, P{0.05, 0.5, 2.0},
                    P{-0.25, 0.5, 1.0}, P{0.05, 1.0, 1.0}}) {
    const auto m = moments<double>({p.r, p.sigma, p.T, 1.0, 1.0}, 20, MomentKind::raw);
    const double h = 1e-3 / (20 * std::abs(p.r) + 190 * p.sigma * p.sigma + 20 / p.T);
    const auto rk = oracle::moments_rk4(p.r, p.sigma, p.T, 20, h);
    for (int n = 0; n <= 20; ++n)
      EXPECT_NEAR(m.values[n] / static_cast<double>(rk[n]), 1.0, 1e-9) << "sigma=" << p.sigma << " n=" << n;
  }
}

TEST(Moments, ConfluentEigenvalues) {
  // r = -sigma^2 makes lambda_1 = lambda_2.
  const double sigma = 0.3, r = -sigma * sigma;
  const auto m = moments<double>({r, sigma, 1.0, 1.0, 1.0}, 6, MomentKind::raw);
  const auto rk = oracle::moments_rk4(r, sigma, 1.0, 6);
  for (int n = 0; n <= 6; ++n) EXPECT_NEAR(m.values[n] / static_cast<double>(rk[n]), 1.0, 1e-10) << n;
}

TEST(Moments, ScalingConsistency) {
  const MarketParams mk{0.05, 0.5, 1.0, 1.0, 1.0};
  const WeightParams w{0.01, 0.1251};
  const auto raw = moments<double>(mk, 20, MomentKind::raw);
  const auto rel = moments<double>(mk, 20, MomentKind::relative, w);
  const auto s = weight_moments<double>(w, 20);
  ASSERT_TRUE(rel.weight.has_value());
  EXPECT_EQ(rel.values[0], 1.0);
  for (int n = 0; n <= 20; ++n) EXPECT_NEAR(rel.values[n] * s[n] / raw.values[n], 1.0, 1e-12) << n;
}

TEST(Moments, QuadAgreesWithDouble) {
  const MarketParams mk{0.05, 0.5, 1.0, 1.0, 1.0};
  const WeightParams w{0.01, 0.1251};
  const auto d = moments<double>(mk, 20, MomentKind::relative, w);
  const auto q = moments<quad>(mk, 20, MomentKind::relative, w);
  for (int n = 0; n <= 20; ++n) EXPECT_NEAR(d.values[n] / to_double(q.values[n]), 1.0, 1e-12) << n;
}

TEST(Moments, PositivityAndLogConvexity) {
  const auto m = moments<double>({0.05, 0.5, 2.0, 1.0, 1.0}, 20, MomentKind::raw);
  for (int n = 0; n <= 20; ++n) EXPECT_GT(m.values[n], 0.0);
  for (int n = 1; n < 20; ++n) EXPECT_LE(m.values[n] * m.values[n], m.values[n - 1] * m.values[n + 1] * (1 + 1e-12));
}

TEST(Moments, FirstMomentIncreasingInRate) {
  double prev = -1;
  for (double r = -0.2; r <= 0.2; r += 0.02) {
    const double m1 = moments<double>({r, 0.3, 1.0, 1.0, 1.0}, 1, MomentKind::raw).values[1];
    EXPECT_GT(m1, prev);
    prev = m1;
  }
}

TEST(Moments, RawOverflowIsReported) {
  EXPECT_THROW(moments<double>({0.05, 3.0, 10.0, 1.0, 1.0}, 40, MomentKind::raw), MomentOverflow);
}
