#pragma once

// Moments of the arithmetic average A_T of a geometric Brownian motion with
// S_0 = 1. The moment vector (1, E[A_T], ..., E[A_T^N]) solves a linear ODE
// whose lower-bidiagonal generator comes from the polynomial diffusion
// dX = (rX + 1) dt + sigma X dB, X_0 = 0, which has the law of T A_T.

#include <cmath>
#include <optional>
#include <string>

#include "errors.hpp"
#include "linalg.hpp"
#include "market.hpp"
#include "scalar.hpp"

namespace asianlns {

enum class MatrixForm { raw, scaled };

/// Lower-bidiagonal generator G_N (raw) or its rescaling by the weight
/// moments (scaled). Entry (n, n) is diagonal[n], entry (n, n-1) is
/// subdiagonal[n-1].
template <Scalar Real = double>
struct GeneratorMatrix {
  int N = 0;
  MatrixForm form = MatrixForm::raw;
  Vector<Real> diagonal;
  Vector<Real> subdiagonal;

  Matrix<Real> dense() const {
    Matrix<Real> G = Matrix<Real>::Zero(N + 1, N + 1);
    G.diagonal() = diagonal;
    for (int n = 1; n <= N; ++n) G(n, n - 1) = subdiagonal[n - 1];
    return G;
  }
};

enum class MomentKind {
  raw,      ///< E[A_T^n]
  relative  ///< E[A_T^n] / s_n with s_n = exp(n mu + n^2 nu^2 / 2)
};

template <Scalar Real = double>
struct MomentVector {
  int N = 0;
  MomentKind kind = MomentKind::raw;
  Vector<Real> values;
  std::optional<WeightParams> weight;  ///< set for the relative kind
};

/// n-th moment of the weight, s_n = exp(n mu + n^2 nu^2 / 2), n = 0..N.
template <Scalar Real = double>
Vector<Real> weight_moments(const WeightParams& w, int N) {
  using std::exp;
  Vector<Real> s(N + 1);
  const Real mu = w.mu;
  const Real nu2 = w.nu2;
  for (int n = 0; n <= N; ++n) s[n] = exp(Real(n) * mu + Real(n) * Real(n) * nu2 / 2);
  return s;
}

template <Scalar Real = double>
GeneratorMatrix<Real> generator(const MarketParams& market, int N, MatrixForm form,
                                const std::optional<WeightParams>& weight = std::nullopt) {
  using std::exp;
  market.validate();
  if (N < 0) throw InvalidArgument("generator: degree N must be >= 0");
  if (form == MatrixForm::scaled && !weight)
    throw InvalidArgument("generator: scaled form requires weight parameters");
  if (weight) weight->validate();

  const Real r = market.r;
  const Real sigma2 = Real(market.sigma) * Real(market.sigma);
  const Real T = market.T;

  GeneratorMatrix<Real> G;
  G.N = N;
  G.form = form;
  G.diagonal.resize(N + 1);
  G.subdiagonal.resize(N);
  for (int n = 0; n <= N; ++n) {
    const Real rn = n;
    G.diagonal[n] = rn * r + rn * (rn - 1) * sigma2 / 2;
  }
  for (int n = 1; n <= N; ++n) {
    Real entry = Real(n) / T;
    if (form == MatrixForm::scaled) {
      const Real mu = weight->mu;
      const Real nu2 = weight->nu2;
      entry *= exp(-mu + (1 - 2 * Real(n)) * nu2 / 2);
    }
    G.subdiagonal[n - 1] = entry;
  }
  return G;
}

/// Raw or relative moments of A_T (S_0 = 1) up to degree N, computed as the
/// first column of exp(G T).
template <Scalar Real = double>
MomentVector<Real> moments(const MarketParams& market, int N, MomentKind kind,
                           const std::optional<WeightParams>& weight = std::nullopt) {
  if (kind == MomentKind::relative && !weight)
    throw InvalidArgument("moments: relative moments require weight parameters");
  const auto form = kind == MomentKind::raw ? MatrixForm::raw : MatrixForm::scaled;
  const GeneratorMatrix<Real> G = generator<Real>(market, N, form, weight);

  const Matrix<Real> E = linalg::expm_lower<Real>(G.dense() * Real(market.T));

  MomentVector<Real> m;
  m.N = N;
  m.kind = kind;
  m.weight = kind == MomentKind::relative ? weight : std::nullopt;
  m.values = E.col(0);
  m.values[0] = 1;

  using std::isfinite;
  for (int n = 0; n <= N; ++n) {
    if (!isfinite(m.values[n])) {
      if (kind == MomentKind::raw)
        throw MomentOverflow("raw moment of degree " + std::to_string(n) +
                             " is not representable; use relative moments");
      throw NumericalError("model", "relative moment of degree " + std::to_string(n) + " is not finite");
    }
  }
  return m;
}

} // namespace asianlns
