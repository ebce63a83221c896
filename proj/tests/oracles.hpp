#pragma once

// Independent reference computations used only by the tests.

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace oracle {

/// Raw moments E[A_T^n], n = 0..N, by classical RK4 on m' = G m with the
/// generator written out from its definition (S_0 = 1).
inline std::vector<long double> moments_rk4(double r, double sigma, double T, int N, double h = 1e-5) {
  const int steps = static_cast<int>(std::ceil(T / h));
  const long double dt = static_cast<long double>(T) / steps;
  std::vector<long double> lam(N + 1), sub(N + 1, 0.0L);
  for (int n = 0; n <= N; ++n) {
    lam[n] = n * static_cast<long double>(r) + 0.5L * n * (n - 1) * sigma * sigma;
    if (n >= 1) sub[n] = n / static_cast<long double>(T);
  }
  auto rhs = [&](const std::vector<long double>& m) {
    std::vector<long double> d(N + 1);
    for (int n = 0; n <= N; ++n) d[n] = lam[n] * m[n] + (n >= 1 ? sub[n] * m[n - 1] : 0.0L);
    return d;
  };
  std::vector<long double> m(N + 1, 0.0L), tmp(N + 1);
  m[0] = 1;
  for (int s = 0; s < steps; ++s) {
    const auto k1 = rhs(m);
    for (int n = 0; n <= N; ++n) tmp[n] = m[n] + 0.5L * dt * k1[n];
    const auto k2 = rhs(tmp);
    for (int n = 0; n <= N; ++n) tmp[n] = m[n] + 0.5L * dt * k2[n];
    const auto k3 = rhs(tmp);
    for (int n = 0; n <= N; ++n) tmp[n] = m[n] + dt * k3[n];
    const auto k4 = rhs(tmp);
    for (int n = 0; n <= N; ++n) m[n] += dt / 6 * (k1[n] + 2 * k2[n] + 2 * k3[n] + k4[n]);
  }
  return m;
}

inline double lognormal_pdf(double mu, double nu2, double x) {
  const double z = std::log(x) - mu;
  return std::exp(-z * z / (2 * nu2)) / (std::sqrt(2 * std::numbers::pi * nu2) * x);
}

/// Integral of f(x) w(x) dx over (0, inf) for the log-normal weight (mu, nu2),
/// computed in y = log x with adaptive Gauss-Kronrod on unit-width pieces.
/// For f growing like x^degree the mass of f w sits near mu + degree nu^2,
/// so the window is widened accordingly.
inline double lognormal_expectation(double mu, double nu2, const std::function<double(double)>& f,
                                    double lo_y = -INFINITY, double hi_y = INFINITY, int degree = 0) {
  const double nu = std::sqrt(nu2);
  const double a = std::max(mu - 14 * nu, lo_y);
  const double b = std::min(mu + degree * nu2 + 14 * nu, hi_y);
  if (!(b > a)) return 0.0;
  auto integrand = [&](double y) {
    const double z = (y - mu) / nu;
    return f(std::exp(y)) * std::exp(-0.5 * z * z) / (std::sqrt(2 * std::numbers::pi) * nu);
  };
  const int pieces = std::max(1, static_cast<int>(std::ceil((b - a) / nu)));
  double sum = 0.0;
  for (int k = 0; k < pieces; ++k) {
    const double lo = a + (b - a) * k / pieces, hi = a + (b - a) * (k + 1) / pieces;
    sum += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, lo, hi, 15, 1e-14);
  }
  return sum;
}

/// Adaptive quadrature of a smooth function on [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-13);
}

/// Gram matrix of the functions eval(x) (a vector of length N + 1) under the
/// log-normal weight (mu, nu2), by composite 30-point Gauss-Legendre in
/// log x on panels of width nu / 2. The window reaches mu + 2 N nu2 + 14 nu
/// so that degree-2N integrands are covered.
inline Eigen::MatrixXd lognormal_gram(double mu, double nu2, int N,
                                      const std::function<Eigen::VectorXd(double)>& eval) {
  using G = boost::math::quadrature::gauss<double, 30>;
  const double nu = std::sqrt(nu2);
  const double lo = mu - 14 * nu, hi = mu + 2 * N * nu2 + 14 * nu;
  const int pieces = static_cast<int>(std::ceil((hi - lo) / (0.5 * nu)));
  const double h = (hi - lo) / pieces;
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(N + 1, N + 1);
  for (int k = 0; k < pieces; ++k) {
    const double c = lo + (k + 0.5) * h;
    for (std::size_t q = 0; q < G::abscissa().size(); ++q)
      for (double s : {-1.0, 1.0}) {
        if (G::abscissa()[q] == 0 && s < 0) continue;
        const double y = c + s * G::abscissa()[q] * 0.5 * h;
        const double z = (y - mu) / nu;
        const double wt = G::weights()[q] * 0.5 * h * std::exp(-0.5 * z * z) / (std::sqrt(2 * std::numbers::pi) * nu);
        const Eigen::VectorXd v = eval(std::exp(y));
        S.noalias() += wt * v * v.transpose();
      }
  }
  return S;
}

} // namespace oracle
