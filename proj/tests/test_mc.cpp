#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <asianlns/mc.hpp>

#include "oracles.hpp"

using namespace asianlns;

namespace {

McConfig small(std::int64_t paths = 20000, double dt = 1e-2) {
  McConfig c;
  c.paths = paths;
  c.dt = dt;
  c.seed = 7;
  return c;
}

const MarketParams case2{0.18, 0.30, 1.0, 2.0, 2.0};
const MarketParams case5{0.05, 0.50, 1.0, 2.0, 2.0};

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
  return v;
}

} // namespace

TEST(Simulate, FrozenDynamics) {
  const auto ps = simulate({0.0, 1e-8, 1.0, 1.0, 1.0}, small(2000));
  for (const auto& p : ps.samples) {
    EXPECT_NEAR(p.A_T, 1.0, 1e-6);
    EXPECT_NEAR(p.S_T, 1.0, 1e-6);
  }
}

TEST(Simulate, MeanOfAverageMatchesFirstMoment) {
  const auto ps = simulate(case2.normalized(), small());
  std::vector<double> a;
  for (const auto& p : ps.samples) a.push_back(p.A_T);
  const McEstimate e = detail::summarize(a, ps.config);
  const double m1 = std::expm1(0.18) / 0.18;
  EXPECT_LT(std::abs(e.value - m1), 3 * e.std_error);
}

TEST(Simulate, DeterministicAcrossBatches) {
  McConfig c = small(10000);
  const auto a = simulate(case5, c);
  c.batches = 4;
  const auto b = simulate(case5, c);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.samples[i].A_T, b.samples[i].A_T);
    EXPECT_EQ(a.samples[i].Q_T, b.samples[i].Q_T);
    EXPECT_EQ(a.samples[i].S_T, b.samples[i].S_T);
    EXPECT_EQ(a.samples[i].B_T, b.samples[i].B_T);
  }
  const auto pa = price_cv(case5, small(10000));
  c = small(10000);
  c.batches = 3;
  const auto pb = price_cv(case5, c);
  EXPECT_EQ(pa.value, pb.value);
  EXPECT_EQ(pa.std_error, pb.std_error);
}

TEST(Simulate, StreamsDiffer) {
  const auto a = simulate(case5, small(100), 0);
  const auto b = simulate(case5, small(100), 1);
  EXPECT_NE(a.samples[0].A_T, b.samples[0].A_T);
}

TEST(Simulate, PathwiseAmGm) {
  const auto ps = simulate(case5, small());
  for (const auto& p : ps.samples) {
    EXPECT_GE(p.A_T, p.Q_T - 1e-12);
    EXPECT_GT(p.Q_T, 0.0);
    EXPECT_GT(p.S_T, 0.0);
  }
}

TEST(Simulate, RejectsBadConfig) {
  McConfig c = small();
  c.paths = 0;
  EXPECT_THROW(simulate(case5, c), InvalidArgument);
  c = small();
  c.dt = 2.0;
  EXPECT_THROW(simulate(case5, c), InvalidArgument);
}

TEST(Geometric, ZeroStrike) {
  const MarketParams m{0.05, 0.5, 1.0, 1.0, 0.0};
  const auto [mu, s2] = geometric_log_params(m);
  EXPECT_NEAR(geometric_price_closed_form(m), std::exp(-0.05) * std::exp(mu + 0.5 * s2), 1e-15);
}

TEST(Geometric, PriceMatchesQuadrature) {
  const MarketParams m = case2;
  const auto [mu, s2] = geometric_log_params(m);
  const double lm = mu + std::log(m.S0);
  const double q = oracle::lognormal_expectation(lm, s2, [&](double x) { return std::max(x - m.K, 0.0); },
                                                 std::log(m.K));
  EXPECT_NEAR(geometric_price_closed_form(m) / (std::exp(-m.r * m.T) * q), 1.0, 1e-10);
}

TEST(Geometric, LogVarianceMatchesSimulation) {
  const auto ps = simulate(case5.normalized(), small(40000));
  std::vector<double> lq, lq2;
  for (const auto& p : ps.samples) lq.push_back(std::log(p.Q_T));
  const auto [mu, s2] = geometric_log_params(case5);
  const McEstimate mean = detail::summarize(lq, ps.config);
  for (double v : lq) lq2.push_back((v - mu) * (v - mu));
  const McEstimate var = detail::summarize(lq2, ps.config);
  EXPECT_LT(std::abs(mean.value - mu), 3 * mean.std_error);
  EXPECT_LT(std::abs(var.value - s2), 3 * var.std_error);
}

TEST(PriceCv, ZeroStrikeIsUnbiased) {
  const MarketParams m{0.05, 0.5, 1.0, 1.0, 0.0};
  const McEstimate e = price_cv(m, small());
  const double fwd = std::exp(-0.05) * std::expm1(0.05) / 0.05;
  EXPECT_LT(std::abs(e.value - fwd), 3 * e.std_error);
  EXPECT_NEAR(e.ci95.first, e.value - 1.96 * e.std_error, 1e-15);
  EXPECT_NEAR(e.ci95.second, e.value + 1.96 * e.std_error, 1e-15);
}

TEST(PriceCv, ReducesVariance) {
  const auto ps = simulate(case5, small());
  EXPECT_LT(price_cv(ps).std_error * 3, price_plain(ps).std_error);
  const auto lns = price(case5, 20).price;
  EXPECT_LT(std::abs(price_cv(ps).value - lns), 3 * price_cv(ps).std_error + 5e-4);
}

TEST(Density, GeometricMalliavinMatchesClosedForm) {
  const MarketParams m = case5.normalized();
  const auto ps = simulate(m, small(200000));
  const auto [mu, s2] = geometric_log_params(m);
  const double s = std::sqrt(s2);
  // Central 99% of the law of Q_T.
  const auto grid = linspace(std::exp(mu - 2.5758 * s), std::exp(mu + 2.5758 * s), 50);
  const auto est = density_geometric_malliavin(ps, grid);
  for (std::size_t j = 0; j < grid.size(); ++j)
    EXPECT_LT(std::abs(est[j].value - geometric_density(m, grid[j])), 3 * est[j].std_error) << grid[j];
}

TEST(Density, ThresholdShiftLeavesMeanUnchanged) {
  const MarketParams m = case5.normalized();
  const auto ps = simulate(m, small());
  const auto grid = linspace(0.4, 2.0, 17);
  const auto a = density_malliavin(ps, grid);
  const auto b = density_malliavin(ps, grid, ThresholdFunction([](double) { return 0.0; }));
  // The difference is c(x) E[H]; its standard error is that of the mean weight.
  std::vector<double> h;
  for (const auto& p : ps.samples) h.push_back(malliavin_weight_A(m, p));
  const McEstimate eh = detail::summarize(h, ps.config);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double c = grid[j] <= first_moment_A(m) ? 1.0 : 0.0;
    EXPECT_NEAR(b[j].value - a[j].value, c * eh.value, 1e-9);
  }
  EXPECT_LT(std::abs(eh.value), 3 * eh.std_error);
}

TEST(Density, VanishesNearZeroWithDefaultThreshold) {
  const MarketParams m = case5.normalized();
  const auto ps = simulate(m, small());
  const std::vector<double> grid{0.05};
  const auto a = density_malliavin(ps, grid);
  EXPECT_EQ(a[0].value, 0.0);  // every path has A_T > 0.05 here, so the integrand is zero
  const auto b = density_malliavin(ps, grid, ThresholdFunction([](double) { return 0.0; }));
  EXPECT_NE(b[0].value, 0.0);
}

TEST(Density, CvAgreesWithPlainAndReducesVariance) {
  const MarketParams m{0.0125, 0.25, 2.0, 1.0, 1.0};
  const auto ps = simulate(m, small());
  const double m1 = first_moment_A(m);
  const auto r = density_cv(ps, {0.7, 0.85, m1, 1.2, 1.4});
  for (std::size_t j = 0; j < r.grid.size(); ++j) {
    const double joint = std::hypot(r.cv[j].std_error, r.plain[j].std_error);
    EXPECT_LT(std::abs(r.cv[j].value - r.plain[j].value), 3 * joint) << r.grid[j];
  }
  EXPECT_GT(r.mean_variance_reduction(), 3.0);
}

TEST(Density, UnitMass) {
  const MarketParams m = case5.normalized();
  const auto ps = simulate(m, small());
  const auto grid = linspace(0.01, 8.0, 400);
  for (bool cv : {false, true}) {
    const McEstimate mass = density_mass(ps, grid, cv);
    EXPECT_LT(std::abs(mass.value - 1.0), 3 * mass.std_error) << cv;
  }
}

TEST(Density, RejectsUnnormalizedPaths) {
  const auto ps = simulate(case5, small(100));
  EXPECT_THROW(density_malliavin(ps, {1.0}), InvalidArgument);
  EXPECT_THROW(density_malliavin(simulate(case5.normalized(), small(100)), {0.0}), InvalidArgument);
}

TEST(LikelihoodCoefficients, MatchMonteCarloIntegration) {
  const auto a = price(case5, 5);
  const auto b = orthonormal_basis<double>(a.weight, 5, BasisMethod::recurrence);
  const auto ps = simulate(case5.normalized(), small(100000));
  std::vector<std::vector<double>> vals(6);
  for (const auto& p : ps.samples) {
    const auto v = b.evaluate(p.A_T);
    for (int n = 0; n <= 5; ++n) vals[n].push_back(v[n]);
  }
  for (int n = 0; n <= 5; ++n) {
    const McEstimate e = detail::summarize(vals[n], ps.config);
    EXPECT_GE(a.ell[n], e.ci95.first - 1e-12) << n;
    EXPECT_LE(a.ell[n], e.ci95.second + 1e-12) << n;
  }
}

TEST(LikelihoodNorm, SelfTestWithWeightDraws) {
  const WeightParams w{0.1, 0.2};
  std::mt19937_64 rng(3);
  std::lognormal_distribution<double> draw(w.mu, w.nu());
  std::normal_distribution<double> noise(0.0, 0.5);
  std::vector<double> x, g;
  for (int i = 0; i < 50000; ++i) {
    x.push_back(draw(rng));
    g.push_back(weight_density(w, x.back()) * (1.0 + noise(rng)));
  }
  const McEstimate e = likelihood_norm_sq(g, x, w);
  EXPECT_LT(std::abs(e.value - 1.0), 3 * e.std_error);
}

TEST(LikelihoodNorm, RejectsNonIntegrableWeight) {
  EXPECT_THROW(likelihood_norm_sq(case5, small(100), WeightParams{0.0, 0.1}), NonIntegrableLikelihood);
  const auto ps = simulate(case5.normalized(), small(100));
  EXPECT_THROW(likelihood_norm_sq(ps, ps, WeightParams{0.0, 0.2}), InvalidArgument);
}

TEST(LikelihoodNorm, ProjectionErrorNonNegative) {
  const auto a = price(case2, 20);
  const McEstimate norm = likelihood_norm_sq(case2, small(), a.weight);
  for (int n = 0; n <= 20; ++n) EXPECT_GE(norm.value - a.sum_ell_sq(n), -3 * norm.std_error) << n;
}

TEST(ErrorBound, ZeroWhenPayoffIsPolynomial) {
  const MarketParams m{0.05, 0.5, 1.0, 1.0, 0.0};
  const auto a = price(m, 5);
  McEstimate norm;
  norm.value = 1.5;
  norm.std_error = 0.1;
  const ErrorBound b = error_bound(a, norm);
  EXPECT_EQ(b.bound, 0.0);
  EXPECT_EQ(b.ci95.second, 0.0);
}

TEST(ErrorBound, DeltaMethodAndFloor) {
  const auto a = price(case5, 20);
  McEstimate norm;
  norm.value = a.sum_ell_sq(20) + 0.04;
  norm.std_error = 0.01;
  const ErrorBound b = error_bound(a, norm);
  EXPECT_NEAR(b.eps_l, 0.04, 1e-12);
  EXPECT_NEAR(b.bound, std::sqrt(a.eps_F * 0.04), 1e-15);
  EXPECT_NEAR(b.bound_se, 0.5 * std::sqrt(a.eps_F / 0.04) * 0.01, 1e-15);
  norm.value = a.sum_ell_sq(20) - 0.01;
  const ErrorBound z = error_bound(a, norm);
  EXPECT_LT(z.eps_l, 0.0);
  EXPECT_EQ(z.bound, 0.0);
  EXPECT_EQ(z.at(-3), 0.0);
  EXPECT_GT(z.at(3), 0.0);
}

TEST(ErrorBound, CoversMonteCarloDeviation) {
  const auto a = price(case5, 20);
  const MarketParams m = case5.normalized();
  const PathSet ps = simulate(m, small(), 0);
  const ErrorBound b = error_bound(a, likelihood_norm_sq(ps, simulate(m, small(), 1), a.weight));
  const McEstimate mc = price_cv(ps);
  EXPECT_LE(std::abs(mc.value * case5.S0 - a.price), b.bound + 3 * mc.std_error * case5.S0);
}

TEST(Tail, SurvivalDecaysFasterThanExponential) {
  // Diagnostic: log survival against -log(x)^2 / (2 sigma^2 T).
  const MarketParams m = case5.normalized();
  const auto ps = simulate(m, small(100000));
  for (double x : {2.0, 2.5}) {
    const double s = empirical_survival(ps, x);
    ASSERT_GT(s, 0.0);
    const double ratio = std::log(s) / (-std::log(x) * std::log(x) / (2 * m.sigma * m.sigma * m.T));
    EXPECT_GT(ratio, 0.5) << x;
    EXPECT_LT(ratio, 10.0) << x;
  }
}
