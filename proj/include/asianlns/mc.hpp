#pragma once

// Monte-Carlo engine for the Black-Scholes arithmetic average: path
// simulation, control-variate pricing, Malliavin density estimators and the
// likelihood-ratio norm used in the projection error bound.
//
// Paths are generated in fixed blocks of `block_size`. Block b of stream s
// draws from its own generator keyed by (seed, s, b), so results depend only
// on the seed and never on the number of worker threads.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <boost/random/normal_distribution.hpp>

#include "basis.hpp"
#include "errors.hpp"
#include "market.hpp"
#include "model.hpp"
#include "pricer.hpp"
#include "scalar.hpp"

namespace asianlns {

struct McConfig {
  std::int64_t paths = 200000;
  double dt = 1e-3;
  std::uint64_t seed = 42;
  int batches = 1;  ///< worker threads; never changes the numbers

  void validate(const MarketParams& market) const {
    if (paths < 1) throw InvalidArgument("mc: paths must be >= 1");
    if (!(dt > 0) || !(dt <= market.T)) throw InvalidArgument("mc: dt must be in (0, T]");
    if (batches < 1) throw InvalidArgument("mc: batches must be >= 1");
  }

  /// Number of time steps, round(T / dt) (at least one).
  int steps(double T) const { return std::max(1, static_cast<int>(std::lround(T / dt))); }
};

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::pair<double, double> ci95{0.0, 0.0};
  std::int64_t n_effective = 0;
  McConfig config;

  double lower(double k) const { return value - k * std_error; }
  double upper(double k) const { return value + k * std_error; }
};

struct PathSample {
  double S_T = 0.0;
  double A_T = 0.0;  ///< trapezoidal arithmetic average
  double Q_T = 0.0;  ///< trapezoidal geometric average
  double B_T = 0.0;  ///< terminal Brownian motion
};

struct PathSet {
  MarketParams market;
  McConfig config;
  std::uint64_t stream = 0;
  std::vector<PathSample> samples;
};

namespace detail {

inline constexpr std::int64_t block_size = 4096;

// Mean and standard error of per-path values, summed in path order.
inline McEstimate summarize(const std::vector<double>& x, const McConfig& cfg) {
  McEstimate e;
  e.config = cfg;
  const auto n = static_cast<std::int64_t>(x.size());
  e.n_effective = n;
  if (n == 0) return e;
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  e.value = mean;
  e.std_error = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
  e.ci95 = {mean - 1.96 * e.std_error, mean + 1.96 * e.std_error};
  return e;
}

inline double sample_variance(const std::vector<double>& x) {
  const double n = static_cast<double>(x.size());
  if (x.size() < 2) return 0.0;
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  return ss / (n - 1);
}

inline void simulate_block(const MarketParams& m, const McConfig& cfg, std::uint64_t stream,
                           std::int64_t block, PathSample* out, std::int64_t count) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(block),
                    static_cast<std::uint32_t>(static_cast<std::uint64_t>(block) >> 32)};
  std::mt19937_64 rng(seq);
  boost::random::normal_distribution<double> normal;

  const int n = cfg.steps(m.T);
  const double h = m.T / n;
  const double sqh = std::sqrt(h);
  const double drift = (m.r - 0.5 * m.sigma * m.sigma) * h;
  const double vol = m.sigma * sqh;
  const double logS0 = std::log(m.S0);

  for (std::int64_t p = 0; p < count; ++p) {
    double logS = logS0;
    double S = m.S0;
    double sumS = 0.5 * S;
    double sumLog = 0.5 * logS;
    double B = 0.0;
    for (int k = 0; k < n; ++k) {
      const double z = normal(rng);
      B += sqh * z;
      logS += drift + vol * z;
      S = std::exp(logS);
      sumS += S;
      sumLog += logS;
    }
    sumS -= 0.5 * S;
    sumLog -= 0.5 * logS;
    PathSample& s = out[p];
    s.S_T = S;
    s.B_T = B;
    s.A_T = sumS / n;
    s.Q_T = std::exp(sumLog / n);
  }
}

} // namespace detail

/// Simulates config.paths trajectories of S with exact log-normal increments
/// and returns the terminal values and trapezoidal averages. Different
/// streams of the same seed are independent.
inline PathSet simulate(const MarketParams& market, const McConfig& config, std::uint64_t stream = 0) {
  market.validate();
  config.validate(market);
  PathSet set;
  set.market = market;
  set.config = config;
  set.stream = stream;
  set.samples.resize(static_cast<std::size_t>(config.paths));

  const std::int64_t blocks = (config.paths + detail::block_size - 1) / detail::block_size;
  auto work = [&](int worker) {
    for (std::int64_t b = worker; b < blocks; b += config.batches) {
      const std::int64_t first = b * detail::block_size;
      const std::int64_t count = std::min(detail::block_size, config.paths - first);
      detail::simulate_block(market, config, stream, b, set.samples.data() + first, count);
    }
  };
  const int workers = static_cast<int>(std::min<std::int64_t>(config.batches, blocks));
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(work, t);
    for (auto& t : pool) t.join();
  }
  return set;
}

/// Parameters (m, s^2) of log(Q_T / S_0) ~ Normal(m, s^2).
inline std::pair<double, double> geometric_log_params(const MarketParams& market) {
  const double m = 0.5 * (market.r - 0.5 * market.sigma * market.sigma) * market.T;
  const double s2 = market.sigma * market.sigma * market.T / 3.0;
  return {m, s2};
}

/// Price of the continuously sampled geometric Asian call.
inline double geometric_price_closed_form(const MarketParams& market) {
  market.validate();
  const auto [m, s2] = geometric_log_params(market);
  const double s = std::sqrt(s2);
  const double disc = std::exp(-market.r * market.T);
  const double fwd = market.S0 * std::exp(m + 0.5 * s2);
  if (market.K == 0) return disc * fwd;
  const double lk = std::log(market.K / market.S0);
  return disc * (fwd * norm_cdf<double>((m + s2 - lk) / s) - market.K * norm_cdf<double>((m - lk) / s));
}

/// Density of Q_T / S_0.
inline double geometric_density(const MarketParams& market, double x) {
  if (!(x > 0)) return 0.0;
  const auto [m, s2] = geometric_log_params(market);
  const double z = std::log(x) - m;
  return std::exp(-z * z / (2 * s2)) / (std::sqrt(2 * std::numbers::pi * s2) * x);
}

/// E[A_T / S_0].
inline double first_moment_A(const MarketParams& market) {
  return moments<double>(market.normalized(), 1, MomentKind::raw).values[1];
}

/// E[Q_T / S_0].
inline double first_moment_Q(const MarketParams& market) {
  const auto [m, s2] = geometric_log_params(market);
  return std::exp(m + 0.5 * s2);
}

/// Control-variate price e^{-rT}[(A_T - K)^+ - (Q_T - K)^+] + geometric price.
inline McEstimate price_cv(const PathSet& paths) {
  const MarketParams& m = paths.market;
  const double disc = std::exp(-m.r * m.T);
  const double geo = geometric_price_closed_form(m);
  std::vector<double> y;
  y.reserve(paths.samples.size());
  for (const auto& p : paths.samples)
    y.push_back(disc * (std::max(p.A_T - m.K, 0.0) - std::max(p.Q_T - m.K, 0.0)) + geo);
  return detail::summarize(y, paths.config);
}

inline McEstimate price_cv(const MarketParams& market, const McConfig& config) {
  return price_cv(simulate(market, config));
}

/// Plain payoff average e^{-rT}(A_T - K)^+, for variance comparisons.
inline McEstimate price_plain(const PathSet& paths) {
  const MarketParams& m = paths.market;
  const double disc = std::exp(-m.r * m.T);
  std::vector<double> y;
  y.reserve(paths.samples.size());
  for (const auto& p : paths.samples) y.push_back(disc * std::max(p.A_T - m.K, 0.0));
  return detail::summarize(y, paths.config);
}

// The density estimators below target the densities of A_T / S_0 and
// Q_T / S_0, matching the normalized problem used by the series. Grid points
// are in the same normalized units.

using ThresholdFunction = std::function<double(double)>;

/// Malliavin weight of the arithmetic average for normalized paths.
inline double malliavin_weight_A(const MarketParams& m, const PathSample& p) {
  const double s2 = m.sigma * m.sigma;
  return 2.0 / s2 * ((p.S_T - 1.0) / (m.T * p.A_T * p.A_T) + (s2 - m.r) / p.A_T);
}

/// Malliavin weight of the geometric average for normalized paths.
inline double malliavin_weight_Q(const MarketParams& m, const PathSample& p) {
  return 2.0 * p.B_T / (m.sigma * m.T * p.Q_T) + 1.0 / p.Q_T;
}

/// c_1(x) = 1{x <= E[A_T]}.
inline ThresholdFunction default_threshold_A(const MarketParams& market) {
  const double m1 = first_moment_A(market);
  return [m1](double x) { return x <= m1 ? 1.0 : 0.0; };
}

/// c_2(x) = 1{x <= E[Q_T]}.
inline ThresholdFunction default_threshold_Q(const MarketParams& market) {
  const double m1 = first_moment_Q(market);
  return [m1](double x) { return x <= m1 ? 1.0 : 0.0; };
}

namespace detail {

inline PathSet normalized_paths(const MarketParams& market, const McConfig& config, std::uint64_t stream) {
  return simulate(market.normalized(), config, stream);
}

inline void check_grid(const std::vector<double>& grid) {
  for (double x : grid)
    if (!(x > 0)) throw InvalidArgument("density grid points must be > 0");
}

inline void check_normalized(const PathSet& paths) {
  if (paths.market.S0 != 1.0) throw InvalidArgument("density estimators need paths of the normalized market (S0 = 1)");
}

// Per-path integrand of a density estimator at one grid point.
template <class F>
std::vector<McEstimate> grid_estimates(const PathSet& paths, const std::vector<double>& grid, F&& integrand) {
  std::vector<McEstimate> out;
  out.reserve(grid.size());
  std::vector<double> y(paths.samples.size());
  for (double x : grid) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = integrand(paths.samples[i], x);
    out.push_back(summarize(y, paths.config));
  }
  return out;
}

} // namespace detail

/// g(x) = E[(1{A_T >= x} - c(x)) H_A], default c = c_1.
inline std::vector<McEstimate> density_malliavin(const PathSet& paths, const std::vector<double>& grid,
                                                 std::optional<ThresholdFunction> c = std::nullopt) {
  detail::check_normalized(paths);
  detail::check_grid(grid);
  const MarketParams& m = paths.market;
  const ThresholdFunction cf = c ? *c : default_threshold_A(m);
  std::vector<double> weights;
  weights.reserve(paths.samples.size());
  for (const auto& p : paths.samples) weights.push_back(malliavin_weight_A(m, p));
  std::vector<McEstimate> out;
  out.reserve(grid.size());
  std::vector<double> y(paths.samples.size());
  for (double x : grid) {
    const double cx = cf(x);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = ((paths.samples[i].A_T >= x ? 1.0 : 0.0) - cx) * weights[i];
    out.push_back(detail::summarize(y, paths.config));
  }
  return out;
}

inline std::vector<McEstimate> density_malliavin(const MarketParams& market, const McConfig& config,
                                                 const std::vector<double>& grid,
                                                 std::optional<ThresholdFunction> c = std::nullopt) {
  return density_malliavin(detail::normalized_paths(market, config, 0), grid, std::move(c));
}

/// q(x) = E[(1{Q_T >= x} - c(x)) H_Q], default c = c_2; the closed form is
/// geometric_density().
inline std::vector<McEstimate> density_geometric_malliavin(const PathSet& paths, const std::vector<double>& grid,
                                                           std::optional<ThresholdFunction> c = std::nullopt) {
  detail::check_normalized(paths);
  detail::check_grid(grid);
  const MarketParams& m = paths.market;
  const ThresholdFunction cf = c ? *c : default_threshold_Q(m);
  return detail::grid_estimates(paths, grid, [&](const PathSample& p, double x) {
    return ((p.Q_T >= x ? 1.0 : 0.0) - cf(x)) * malliavin_weight_Q(m, p);
  });
}

/// Control-variate density estimate with the plain estimator on the same
/// paths, for variance-reduction reporting.
struct DensityCvResult {
  std::vector<double> grid;
  std::vector<McEstimate> cv;
  std::vector<McEstimate> plain;

  /// var(plain) / var(cv) at grid point j.
  double variance_reduction(std::size_t j) const {
    const double a = plain.at(j).std_error;
    const double b = cv.at(j).std_error;
    return b > 0 ? (a * a) / (b * b) : std::numeric_limits<double>::infinity();
  }

  double mean_variance_reduction() const {
    if (grid.empty()) return 0.0;
    double s = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) s += variance_reduction(j);
    return s / static_cast<double>(grid.size());
  }
};

inline DensityCvResult density_cv(const PathSet& paths, const std::vector<double>& grid) {
  detail::check_normalized(paths);
  detail::check_grid(grid);
  const MarketParams& m = paths.market;
  const double m1A = first_moment_A(m);
  const double m1Q = first_moment_Q(m);
  const std::size_t n = paths.samples.size();
  std::vector<double> hA(n), hQ(n);
  for (std::size_t i = 0; i < n; ++i) {
    hA[i] = malliavin_weight_A(m, paths.samples[i]);
    hQ[i] = malliavin_weight_Q(m, paths.samples[i]);
  }
  DensityCvResult res;
  res.grid = grid;
  std::vector<double> plain(n), cv(n);
  for (double x : grid) {
    const double c1 = x <= m1A ? 1.0 : 0.0;
    const double c2 = x <= m1Q ? 1.0 : 0.0;
    const double q = geometric_density(m, x);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& p = paths.samples[i];
      plain[i] = ((p.A_T >= x ? 1.0 : 0.0) - c1) * hA[i];
      cv[i] = plain[i] + q - ((p.Q_T >= x ? 1.0 : 0.0) - c2) * hQ[i];
    }
    res.plain.push_back(detail::summarize(plain, paths.config));
    res.cv.push_back(detail::summarize(cv, paths.config));
  }
  return res;
}

inline DensityCvResult density_cv(const MarketParams& market, const McConfig& config,
                                  const std::vector<double>& grid) {
  return density_cv(detail::normalized_paths(market, config, 0), grid);
}

/// Mass of the estimated density over [grid.front(), grid.back()] by the
/// trapezoidal rule, with the standard error of the per-path integrals.
/// `cv` selects the control-variate integrand.
inline McEstimate density_mass(const PathSet& paths, const std::vector<double>& grid, bool cv) {
  detail::check_normalized(paths);
  detail::check_grid(grid);
  if (grid.size() < 2) throw InvalidArgument("density_mass: grid needs at least two points");
  const MarketParams& m = paths.market;
  const double m1A = first_moment_A(m);
  const double m1Q = first_moment_Q(m);
  std::vector<double> qx, c1, c2, wts(grid.size(), 0.0);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    qx.push_back(geometric_density(m, grid[j]));
    c1.push_back(grid[j] <= m1A ? 1.0 : 0.0);
    c2.push_back(grid[j] <= m1Q ? 1.0 : 0.0);
    if (j > 0) {
      const double h = grid[j] - grid[j - 1];
      wts[j - 1] += 0.5 * h;
      wts[j] += 0.5 * h;
    }
  }
  std::vector<double> y;
  y.reserve(paths.samples.size());
  for (const auto& p : paths.samples) {
    const double hA = malliavin_weight_A(m, p);
    const double hQ = cv ? malliavin_weight_Q(m, p) : 0.0;
    double s = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
      double v = ((p.A_T >= grid[j] ? 1.0 : 0.0) - c1[j]) * hA;
      if (cv) v += qx[j] - ((p.Q_T >= grid[j] ? 1.0 : 0.0) - c2[j]) * hQ;
      s += wts[j] * v;
    }
    y.push_back(s);
  }
  return detail::summarize(y, paths.config);
}

/// ||l||_w^2 = E[g(A~) / w(A~)] with g replaced by its control-variate
/// Malliavin estimator and A~ an independent copy of A_T. `paths` and
/// `tilde` must come from independent streams of the normalized market.
inline McEstimate likelihood_norm_sq(const PathSet& paths, const PathSet& tilde, const WeightParams& weight) {
  detail::check_normalized(paths);
  detail::check_normalized(tilde);
  weight.validate();
  const MarketParams& m = paths.market;
  if (!weight.square_integrable_for(m))
    throw NonIntegrableLikelihood("likelihood_norm_sq: nu^2 <= sigma^2 T / 2, ||l||_w is infinite");
  if (tilde.samples.size() != paths.samples.size())
    throw InvalidArgument("likelihood_norm_sq: path sets differ in size");
  if (paths.stream == tilde.stream && paths.config.seed == tilde.config.seed)
    throw InvalidArgument("likelihood_norm_sq: the second path set must be independent");
  const double m1A = first_moment_A(m);
  const double m1Q = first_moment_Q(m);
  std::vector<double> y;
  y.reserve(paths.samples.size());
  for (std::size_t i = 0; i < paths.samples.size(); ++i) {
    const auto& p = paths.samples[i];
    const double x = tilde.samples[i].A_T;
    const double c1 = x <= m1A ? 1.0 : 0.0;
    const double c2 = x <= m1Q ? 1.0 : 0.0;
    const double g = ((p.A_T >= x ? 1.0 : 0.0) - c1) * malliavin_weight_A(m, p) + geometric_density(m, x) -
                     ((p.Q_T >= x ? 1.0 : 0.0) - c2) * malliavin_weight_Q(m, p);
    y.push_back(g / weight_density(weight, x));
  }
  return detail::summarize(y, paths.config);
}

inline McEstimate likelihood_norm_sq(const MarketParams& market, const McConfig& config, const WeightParams& weight) {
  const MarketParams m = market.normalized();
  if (!weight.square_integrable_for(m))
    throw NonIntegrableLikelihood("likelihood_norm_sq: nu^2 <= sigma^2 T / 2, ||l||_w is infinite");
  return likelihood_norm_sq(simulate(m, config, 0), simulate(m, config, 1), weight);
}

/// Generic form: mean of g_hat_i / w(x_i) for unbiased density estimates
/// g_hat_i at independent draws x_i of the target law.
inline McEstimate likelihood_norm_sq(const std::vector<double>& g_hat, const std::vector<double>& x,
                                     const WeightParams& weight, const McConfig& config = {}) {
  if (g_hat.size() != x.size()) throw InvalidArgument("likelihood_norm_sq: size mismatch");
  std::vector<double> y;
  y.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y.push_back(g_hat[i] / weight_density(weight, x[i]));
  return detail::summarize(y, config);
}

/// sqrt(eps_F eps_l) with eps_l = ||l||^2 - sum_{n<=N} l_n^2 estimated by MC.
struct ErrorBound {
  int N = 0;
  double eps_F = 0.0;      ///< currency units squared
  double eps_l = 0.0;      ///< raw estimate, may be negative
  double eps_l_se = 0.0;
  double bound = 0.0;      ///< currency units
  double bound_se = 0.0;   ///< delta method; 0 when eps_l <= 0
  std::pair<double, double> ci95{0.0, 0.0};

  /// Bound evaluated at eps_l + k SE (k may be negative), floored at zero.
  double at(double k) const { return std::sqrt(std::max(eps_F, 0.0) * std::max(eps_l + k * eps_l_se, 0.0)); }
};

inline ErrorBound error_bound(const SeriesApproximation& approx, const McEstimate& norm, std::optional<int> order = {}) {
  const int N = order.value_or(approx.N);
  if (N < 0 || N > approx.N) throw InvalidArgument("error_bound: order outside [0, N]");
  ErrorBound b;
  b.N = N;
  b.eps_F = std::max(approx.eps_F_by_order[N], 0.0);
  b.eps_l = norm.value - approx.sum_ell_sq(N);
  b.eps_l_se = norm.std_error;
  b.bound = b.at(0.0);
  b.bound_se = b.eps_l > 0 ? 0.5 * std::sqrt(b.eps_F / b.eps_l) * b.eps_l_se : 0.0;
  b.ci95 = {b.at(-1.96), b.at(1.96)};
  return b;
}

/// Fraction of paths with A_T / S_0 > x, an upper-tail diagnostic to compare
/// with the log-normal-like decay exp(-log(x)^2 / (2 sigma^2 T)).
inline double empirical_survival(const PathSet& paths, double x) {
  if (paths.samples.empty()) return 0.0;
  std::int64_t k = 0;
  for (const auto& p : paths.samples)
    if (p.A_T / paths.market.S0 > x) ++k;
  return static_cast<double>(k) / static_cast<double>(paths.samples.size());
}

} // namespace asianlns
