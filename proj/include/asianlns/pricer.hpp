#pragma once

// Truncated log-normal series price of an arithmetic Asian call,
//
//   pi^(N) = sum_{n<=N} f_n ell_n,
//
// with payoff coefficients f_n = <F, b_n>_w in closed form (normal CDFs) and
// likelihood coefficients ell_n = E[b_n(A_T)] from the moments of A_T.
// Everything is computed for S_0 = 1 and rescaled by S_0 on output.

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "basis.hpp"
#include "errors.hpp"
#include "market.hpp"
#include "model.hpp"
#include "scalar.hpp"

namespace asianlns {

enum class Precision { double_precision, quad_precision, automatic };

inline const char* to_string(Precision p) {
  switch (p) {
    case Precision::double_precision: return "double";
    case Precision::quad_precision: return "quad";
    case Precision::automatic: return "auto";
  }
  return "?";
}

inline constexpr int default_order = 20;
inline constexpr int max_order = 40;

struct PricingOptions {
  int N = default_order;
  std::optional<WeightParams> weight;  ///< default_weight() when empty
  BasisMethod method = BasisMethod::automatic;
  Precision precision = Precision::automatic;
  /// Automatic precision recomputes in quad when the rounding-error estimate
  /// of the double result exceeds abs_tolerance + rel_tolerance * |price|
  /// (normalized units, S_0 = 1).
  double abs_tolerance = 1e-13;
  double rel_tolerance = 1e-13;
};

/// Result of one series evaluation. Coefficients are nested in N, so the
/// lower-order prices pi^(n), n <= N, are available from the same object.
struct SeriesApproximation {
  int N = 0;
  std::vector<double> f;    ///< payoff coefficients, currency units
  std::vector<double> ell;  ///< likelihood coefficients, dimensionless
  double price = 0.0;       ///< pi^(N), currency units
  double payoff_norm_sq = 0.0;  ///< ||F||_w^2, currency units squared
  double eps_F = 0.0;           ///< ||F||_w^2 - sum f_n^2
  std::vector<double> eps_F_by_order;  ///< eps_F for n = 0..N
  WeightParams weight;                 ///< weight of the normalized problem
  MarketParams market;

  BasisMethod method_used = BasisMethod::automatic;
  Precision precision_used = Precision::double_precision;
  double gram_rcond = 0.0;
  double rounding_error_estimate = 0.0;  ///< currency units
  std::vector<std::string> warnings;

  /// pi^(n) for 0 <= n <= N.
  double partial_price(int n) const {
    check_order(n);
    double p = 0.0;
    for (int k = 0; k <= n; ++k) p += f[k] * ell[k];
    return p;
  }

  /// |pi^(n) - pi^(n-1)|, a convergence heuristic (not an error bound).
  double convergence_delta(int n) const {
    check_order(n);
    return n == 0 ? 0.0 : std::abs(f[n] * ell[n]);
  }

  double sum_ell_sq(int n) const {
    check_order(n);
    double s = 0.0;
    for (int k = 0; k <= n; ++k) s += ell[k] * ell[k];
    return s;
  }

private:
  void check_order(int n) const {
    if (n < 0 || n > N) throw InvalidArgument("order " + std::to_string(n) + " outside [0, N]");
  }
};

/// fbar_i = f~_i / s_i = exp(mu + (2i+1) nu^2 / 2) Phi(d_{i+1}) - K Phi(d_i),
/// d_n = (mu + n nu^2 - log K) / nu: the weighted moments of (x - K)^+
/// divided by the weight moments. K = 0 takes the limit Phi = 1.
template <Scalar Real = double>
Vector<Real> scaled_payoff_moments(const WeightParams& w, double strike, int N) {
  using std::exp;
  using std::log;
  using std::sqrt;
  w.validate();
  if (!(strike >= 0)) throw InvalidArgument("strike must be >= 0");
  const Real mu = w.mu;
  const Real nu2 = w.nu2;
  const Real nu = sqrt(nu2);
  const Real K = strike;
  auto Phi_d = [&](int n) -> Real {
    if (strike == 0) return Real(1);
    return norm_cdf<Real>((mu + nu2 * Real(n) - log(K)) / nu);
  };
  Vector<Real> fbar(N + 1);
  Real Phi_n = Phi_d(0);
  for (int i = 0; i <= N; ++i) {
    const Real Phi_next = Phi_d(i + 1);
    fbar[i] = exp(mu + (2 * Real(i) + 1) * nu2 / 2) * Phi_next - K * Phi_n;
    Phi_n = Phi_next;
  }
  return fbar;
}

/// f = S_0 e^{-rT} C fbar: coefficients of the discounted payoff
/// e^{-rT}(x - K)^+ (normalized strike) in the basis, in currency units.
template <Scalar Real = double>
Vector<Real> payoff_coefficients(const MarketParams& market, const WeightParams& weight,
                                 const OrthonormalBasis<Real>& basis) {
  using std::exp;
  market.validate();
  if (!(basis.weight() == weight)) throw InvalidArgument("payoff_coefficients: basis built for another weight");
  const MarketParams m = market.normalized();
  const Vector<Real> fbar = scaled_payoff_moments<Real>(weight, m.K, basis.degree());
  const Real scale = Real(market.S0) * exp(-Real(market.r) * Real(market.T));
  return scale * basis.project(fbar);
}

/// ell = C mbar: projections of the likelihood ratio g/w on the basis.
template <Scalar Real = double>
Vector<Real> likelihood_coefficients(const MomentVector<Real>& moments, const OrthonormalBasis<Real>& basis) {
  if (moments.kind != MomentKind::relative)
    throw InvalidArgument("likelihood_coefficients: relative moments required");
  if (moments.N != basis.degree()) throw InvalidArgument("likelihood_coefficients: degree mismatch");
  if (!moments.weight || !(*moments.weight == basis.weight()))
    throw InvalidArgument("likelihood_coefficients: moments and basis use different weights");
  return basis.project(moments.values);
}

/// ||F||_w^2 for F(x) = e^{-rT}(x - K)^+, in currency units squared.
template <Scalar Real = double>
Real payoff_norm_sq(const MarketParams& market, const WeightParams& w) {
  using std::exp;
  using std::log;
  using std::sqrt;
  market.validate();
  w.validate();
  const MarketParams m = market.normalized();
  const Real mu = w.mu;
  const Real nu2 = w.nu2;
  const Real nu = sqrt(nu2);
  const Real K = m.K;
  auto Phi_d = [&](int n) -> Real {
    if (m.K == 0) return Real(1);
    return norm_cdf<Real>((mu + nu2 * Real(n) - log(K)) / nu);
  };
  const Real disc = exp(-2 * Real(m.r) * Real(m.T));
  const Real S0 = market.S0;
  return S0 * S0 * disc *
         (exp(2 * mu + 2 * nu2) * Phi_d(2) - 2 * K * exp(mu + nu2 / 2) * Phi_d(1) + K * K * Phi_d(0));
}

namespace detail {

struct SeriesRun {
  std::vector<double> f, ell, eps_F;
  double price_norm = 0.0;
  double norm_sq = 0.0;
  double error_estimate = 0.0;
  double rcond = 0.0;
  BasisMethod method = BasisMethod::automatic;
};

// One evaluation in the normalized problem (S_0 = 1) in scalar type Real.
template <Scalar Real>
SeriesRun run_series(const MarketParams& m, int N, const WeightParams& w, BasisMethod method) {
  using std::abs;
  using std::exp;
  const OrthonormalBasis<Real> basis = orthonormal_basis<Real>(w, N, method);
  const MomentVector<Real> mbar = moments<Real>(m, N, MomentKind::relative, w);
  const Vector<Real> fbar = scaled_payoff_moments<Real>(w, m.K, N);
  const Real disc = exp(-Real(m.r) * Real(m.T));

  const Vector<Real> ell = likelihood_coefficients<Real>(mbar, basis);
  const Vector<Real> f = disc * basis.project(fbar);
  const Real norm_sq = payoff_norm_sq<Real>(m, w);

  // First-order bound on the error from rounding the inputs of project():
  // u * sum_n (|f_n| (|C||mbar|)_n + |ell_n| e^{-rT} (|C||fbar|)_n).
  const Vector<Real> dm = basis.abs_project(mbar.values);
  const Vector<Real> df = disc * basis.abs_project(fbar);
  Real est = 0;
  for (int n = 0; n <= N; ++n) est += abs(f[n]) * dm[n] + abs(ell[n]) * df[n];
  est *= Real(N + 1) * unit_roundoff<Real>();
  // A Cholesky factor computed in finite precision is only approximately
  // orthonormalizing; bound the effect by the residual of C Mbar C^T = I.
  if (basis.method() == BasisMethod::cholesky_scaled) {
    using std::sqrt;
    est += basis.gram_identity_error() * sqrt(f.squaredNorm() * ell.squaredNorm());
  }

  SeriesRun run;
  run.method = basis.method();
  run.rcond = basis.gram_rcond();
  run.norm_sq = to_double(norm_sq);
  run.error_estimate = to_double(est);
  Real price = 0;
  Real partial_sq = 0;
  for (int n = 0; n <= N; ++n) {
    run.f.push_back(to_double(f[n]));
    run.ell.push_back(to_double(ell[n]));
    price += f[n] * ell[n];
    partial_sq += f[n] * f[n];
    run.eps_F.push_back(to_double(norm_sq - partial_sq));
  }
  run.price_norm = to_double(price);
  using std::isfinite;
  if (!isfinite(price)) throw NumericalError("pricer", "series price is not finite");
  return run;
}

} // namespace detail

/// Series price pi^(N) with full diagnostics.
inline SeriesApproximation price(const MarketParams& market, const PricingOptions& opt) {
  market.validate();
  if (opt.N < 0 || opt.N > max_order)
    throw InvalidArgument("truncation order N must be in [0, " + std::to_string(max_order) + "]");
  const MarketParams m = market.normalized();

  SeriesApproximation out;
  out.N = opt.N;
  out.market = market;
  if (opt.weight) {
    opt.weight->validate();
    out.weight = *opt.weight;
  } else {
    const double m1 = moments<double>(m, 1, MomentKind::raw).values[1];
    out.weight = default_weight(m, m1);
  }
  if (!out.weight.square_integrable_for(m))
    out.warnings.push_back("nu^2 <= sigma^2 T / 2: the likelihood ratio is not in L^2_w and the series may diverge");
  if (market.high_tau()) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "tau=%.2f > 0.5: the series may carry a visible asymptotic bias", market.tau());
    out.warnings.emplace_back(buf);
  }
  if (opt.N > default_order) out.warnings.push_back("N > 20: rounding errors may dominate the higher-order terms");

  auto tolerance = [&](const detail::SeriesRun& r) {
    return opt.abs_tolerance + opt.rel_tolerance * std::abs(r.price_norm);
  };

  detail::SeriesRun run;
  switch (opt.precision) {
    case Precision::double_precision:
      run = detail::run_series<double>(m, opt.N, out.weight, opt.method);
      out.precision_used = Precision::double_precision;
      break;
    case Precision::quad_precision:
      run = detail::run_series<quad>(m, opt.N, out.weight, opt.method);
      out.precision_used = Precision::quad_precision;
      break;
    case Precision::automatic: {
      bool escalate = false;
      try {
        run = detail::run_series<double>(m, opt.N, out.weight, opt.method);
        escalate = !(run.error_estimate <= tolerance(run));
        if (escalate && opt.method == BasisMethod::automatic && run.method == BasisMethod::cholesky_scaled) {
          const double rcond = run.rcond;
          run = detail::run_series<double>(m, opt.N, out.weight, BasisMethod::recurrence);
          run.rcond = rcond;
          escalate = !(run.error_estimate <= tolerance(run));
        }
      } catch (const NumericalError&) {
        escalate = true;
      }
      out.precision_used = Precision::double_precision;
      if (escalate) {
        run = detail::run_series<quad>(m, opt.N, out.weight, opt.method);
        out.precision_used = Precision::quad_precision;
      }
      break;
    }
  }
  if (!(run.error_estimate <= tolerance(run)))
    out.warnings.push_back("rounding-error estimate exceeds tolerance; high-order coefficients are unreliable");
  if (!(run.rcond >= ill_conditioned_rcond) && run.method == BasisMethod::cholesky_scaled)
    out.warnings.push_back("scaled Gram matrix is ill-conditioned");

  const double S0 = market.S0;
  out.method_used = run.method;
  out.gram_rcond = run.rcond;
  out.rounding_error_estimate = S0 * run.error_estimate;
  out.ell = run.ell;
  out.f.resize(run.f.size());
  for (std::size_t n = 0; n < run.f.size(); ++n) out.f[n] = S0 * run.f[n];
  out.payoff_norm_sq = S0 * S0 * run.norm_sq;
  out.eps_F_by_order.resize(run.eps_F.size());
  for (std::size_t n = 0; n < run.eps_F.size(); ++n) {
    // For K = 0 the payoff is linear and reproduced exactly from degree one on.
    out.eps_F_by_order[n] = (m.K == 0 && n >= 1) ? 0.0 : S0 * S0 * run.eps_F[n];
  }
  out.eps_F = out.eps_F_by_order.back();
  out.price = out.partial_price(out.N);
  return out;
}

inline SeriesApproximation price(const MarketParams& market, int N,
                                 const std::optional<WeightParams>& weight = std::nullopt) {
  PricingOptions opt;
  opt.N = N;
  opt.weight = weight;
  return price(market, opt);
}

/// g^(N)(x) = w(x) sum_n ell_n b_n(x), the density of A_T / S_0 implied by
/// the truncated series. Integrates to ell_0 = 1 but may be negative.
class DensityApproximant {
public:
  explicit DensityApproximant(const SeriesApproximation& approx)
      : N_(approx.N), weight_(approx.weight), ell_(approx.ell),
        rec_(recurrence_coefficients<double>(approx.weight, approx.N)) {}

  int degree() const { return N_; }
  const WeightParams& weight() const { return weight_; }

  double operator()(double x) const { return evaluate(x, N_); }

  /// g^(n)(x) for a lower order n <= N.
  double evaluate(double x, int n) const {
    if (!(x > 0)) throw InvalidArgument("density_approx: x must be > 0");
    if (n < 0 || n > N_) throw InvalidArgument("density_approx: order outside [0, N]");
    // Forward recurrence in x; stable on the support of w.
    double b_prev = 0.0, b = 1.0;
    double sum = ell_[0];
    for (int k = 1; k <= n; ++k) {
      const double next = ((x - rec_.alpha[k - 1]) * b - (k >= 2 ? rec_.beta[k - 1] * b_prev : 0.0)) / rec_.beta[k];
      b_prev = b;
      b = next;
      sum += ell_[k] * b;
    }
    return weight_density(weight_, x) * sum;
  }

  std::vector<double> evaluate(const std::vector<double>& xs, int n) const {
    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs) out.push_back(evaluate(x, n));
    return out;
  }

private:
  int N_;
  WeightParams weight_;
  std::vector<double> ell_;
  RecurrenceCoefficients<double> rec_;
};

inline double density_approx(const SeriesApproximation& approx, double x) {
  return DensityApproximant(approx)(x);
}

} // namespace asianlns
