#pragma once

// Log-normal weight w, its moment (Gram) matrices, and orthonormal
// polynomial bases of L^2_w up to a given degree.
//
// Polynomials are represented in the scaled monomials x^i / s_i, where
// s_i = exp(i mu + i^2 nu^2 / 2) is the i-th moment of w. In these
// coordinates the Gram matrix is Mbar_ij = exp(i j nu^2), independent of mu,
// and all entries stay moderate for the degrees used in practice.

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "errors.hpp"
#include "linalg.hpp"
#include "market.hpp"
#include "model.hpp"
#include "scalar.hpp"

namespace asianlns {

/// nu^2 = sigma^2 T / 2 + 1e-4 keeps the likelihood ratio in L^2_w;
/// mu matches the first moment of w to E[A_T] (so that ell_1 = 0).
inline WeightParams default_weight(const MarketParams& market, double first_moment) {
  market.validate();
  if (!(first_moment > 0)) throw InvalidArgument("default_weight: first moment must be > 0");
  WeightParams w;
  w.nu2 = 0.5 * market.sigma * market.sigma * market.T + 1e-4;
  w.mu = std::log(first_moment) - 0.5 * w.nu2;
  return w;
}

/// Log-normal density with parameters (mu, nu^2).
inline double weight_density(const WeightParams& w, double x) {
  if (!(x > 0)) throw InvalidArgument("weight_density: x must be > 0");
  const double z = std::log(x) - w.mu;
  return std::exp(-z * z / (2 * w.nu2)) / (std::sqrt(2 * std::numbers::pi * w.nu2) * x);
}

template <Scalar Real = double>
struct GramMatrix {
  int N = 0;
  MatrixForm form = MatrixForm::scaled;
  Matrix<Real> entries;
};

/// Raw Hankel matrix M_ij = <x^i, x^j>_w or its scaled form Mbar_ij = exp(i j nu^2).
template <Scalar Real = double>
GramMatrix<Real> gram(const WeightParams& w, int N, MatrixForm form) {
  using std::exp;
  using std::isfinite;
  w.validate();
  if (N < 0) throw InvalidArgument("gram: degree N must be >= 0");
  GramMatrix<Real> G;
  G.N = N;
  G.form = form;
  G.entries.resize(N + 1, N + 1);
  const Real mu = w.mu;
  const Real nu2 = w.nu2;
  for (int i = 0; i <= N; ++i) {
    for (int j = 0; j <= i; ++j) {
      const Real k = i + j;
      const Real e = form == MatrixForm::raw ? exp(mu * k + k * k * nu2 / 2) : exp(Real(i) * Real(j) * nu2);
      if (!isfinite(e)) throw NumericalError("basis", "Gram entry (" + std::to_string(i) + "," +
                                                          std::to_string(j) + ") overflows");
      G.entries(i, j) = e;
      G.entries(j, i) = e;
    }
  }
  return G;
}

/// Three-term recurrence of the orthonormal polynomials of the log-normal
/// weight: b_n = ((x - alpha_{n-1}) b_{n-1} - beta_{n-1} b_{n-2}) / beta_n.
/// alpha has entries 0..N-1; beta has entries 0..N with beta[0] unused (0).
template <Scalar Real = double>
struct RecurrenceCoefficients {
  Vector<Real> alpha;
  Vector<Real> beta;
};

template <Scalar Real = double>
RecurrenceCoefficients<Real> recurrence_coefficients(const WeightParams& w, int N) {
  using std::exp;
  using std::expm1;
  using std::sqrt;
  w.validate();
  const Real mu = w.mu;
  const Real nu2 = w.nu2;
  RecurrenceCoefficients<Real> rc;
  rc.alpha.resize(std::max(N, 0));
  rc.beta = Vector<Real>::Zero(N + 1);
  for (int n = 0; n < N; ++n) {
    const Real rn = n;
    rc.alpha[n] = exp(mu + nu2 * (rn - Real(0.5))) * (exp(nu2 * (rn + 1)) + exp(nu2 * rn) - 1);
  }
  for (int n = 1; n <= N; ++n) {
    const Real rn = n;
    rc.beta[n] = exp(mu + nu2 * (3 * rn - 2) / 2) * sqrt(expm1(nu2 * rn));
  }
  return rc;
}

enum class BasisMethod { cholesky_scaled, recurrence, automatic };

inline const char* to_string(BasisMethod m) {
  switch (m) {
    case BasisMethod::cholesky_scaled: return "cholesky_scaled";
    case BasisMethod::recurrence: return "recurrence";
    case BasisMethod::automatic: return "auto";
  }
  return "?";
}

/// Reciprocal condition estimate below which the scaled Gram matrix is
/// treated as ill-conditioned.
inline constexpr double ill_conditioned_rcond = 1e-13;

/// Orthonormal basis b_0..b_N of Pol_N in L^2_w, every b_n with positive
/// leading coefficient and b_0 = 1.
template <Scalar Real = double>
class OrthonormalBasis {
public:
  int degree() const { return N_; }
  BasisMethod method() const { return method_; }
  const WeightParams& weight() const { return weight_; }

  /// Lower-triangular C with (b_0(x), ..., b_N(x))^T = C (x^i / s_i)_i.
  const Matrix<Real>& scaled_coefficients() const { return coeffs_; }

  /// Coefficients with respect to the plain monomials x^i.
  Matrix<Real> monomial_coefficients() const {
    const Vector<Real> s = weight_moments<Real>(weight_, N_);
    return coeffs_ * s.cwiseInverse().asDiagonal();
  }

  /// Cholesky factor of the scaled Gram matrix (cholesky_scaled only).
  const std::optional<Matrix<Real>>& cholesky_factor() const { return chol_; }

  /// Pivot-based reciprocal condition estimate of Mbar; 0 when the
  /// factorization broke down, NaN when it was never attempted.
  double gram_rcond() const { return rcond_; }
  bool ill_conditioned() const { return !(rcond_ >= ill_conditioned_rcond); }

  /// Coordinates of a linear functional in the basis: given
  /// v_i = phi(x^i / s_i), returns (phi(b_0), ..., phi(b_N)).
  Vector<Real> project(const Vector<Real>& v) const {
    if (v.size() != N_ + 1) throw InvalidArgument("project: dimension mismatch");
    if (chol_) return chol_->template triangularView<Eigen::Lower>().solve(v);
    return coeffs_ * v;
  }

  /// |C| |v|, used for rounding-error bounds on project().
  Vector<Real> abs_project(const Vector<Real>& v) const { return coeffs_.cwiseAbs() * v.cwiseAbs(); }

  /// (b_0(x), ..., b_N(x)).
  Vector<Real> evaluate(const Real& x) const {
    using std::exp;
    using std::log;
    if (!(x > 0)) throw InvalidArgument("basis evaluate: x must be > 0");
    if (chol_) {
      const Real mu = weight_.mu;
      const Real nu2 = weight_.nu2;
      const Real lx = log(x);
      Vector<Real> h(N_ + 1);
      for (int i = 0; i <= N_; ++i) h[i] = exp(Real(i) * (lx - mu) - Real(i) * Real(i) * nu2 / 2);
      return project(h);
    }
    Vector<Real> b(N_ + 1);
    b[0] = 1;
    if (N_ >= 1) b[1] = (x - rec_.alpha[0]) / rec_.beta[1];
    for (int n = 2; n <= N_; ++n)
      b[n] = ((x - rec_.alpha[n - 1]) * b[n - 1] - rec_.beta[n - 1] * b[n - 2]) / rec_.beta[n];
    return b;
  }

  /// max |C Mbar C^T - I|, the deviation from orthonormality.
  Real gram_identity_error() const {
    const Matrix<Real> Mbar = gram<Real>(weight_, N_, MatrixForm::scaled).entries;
    const Matrix<Real> I = Matrix<Real>::Identity(N_ + 1, N_ + 1);
    return (coeffs_ * Mbar * coeffs_.transpose() - I).cwiseAbs().maxCoeff();
  }

  static OrthonormalBasis from_cholesky(const WeightParams& w, int N) {
    OrthonormalBasis b(w, N, BasisMethod::cholesky_scaled);
    b.rec_ = recurrence_coefficients<Real>(w, N);
    const Matrix<Real> Mbar = gram<Real>(w, N, MatrixForm::scaled).entries;
    b.chol_ = linalg::cholesky<Real>(Mbar);
    b.rcond_ = linalg::pivot_rcond<Real>(*b.chol_);
    b.coeffs_ = linalg::lower_inverse<Real>(*b.chol_);
    return b;
  }

  /// `gram_rcond` records the condition estimate of a Cholesky attempt that
  /// preceded this construction, if any.
  static OrthonormalBasis from_recurrence(const WeightParams& w, int N,
                                          double gram_rcond = std::numeric_limits<double>::quiet_NaN()) {
    OrthonormalBasis b(w, N, BasisMethod::recurrence);
    b.rcond_ = gram_rcond;
    b.rec_ = recurrence_coefficients<Real>(w, N);
    // Multiplication by x maps x^i/s_i to (s_{i+1}/s_i) x^{i+1}/s_{i+1}.
    using std::exp;
    const Real mu = w.mu;
    const Real nu2 = w.nu2;
    Vector<Real> shift(N + 1);
    for (int i = 0; i <= N; ++i) shift[i] = exp(mu + (2 * Real(i) + 1) * nu2 / 2);
    auto times_x = [&](const Vector<Real>& c) {
      Vector<Real> out = Vector<Real>::Zero(N + 1);
      for (int i = 0; i < N; ++i) out[i + 1] = c[i] * shift[i];
      return out;
    };
    Matrix<Real>& C = b.coeffs_;
    C = Matrix<Real>::Zero(N + 1, N + 1);
    C(0, 0) = 1;
    if (N >= 1) C.row(1) = ((times_x(C.row(0).transpose()) - b.rec_.alpha[0] * C.row(0).transpose()) / b.rec_.beta[1]).transpose();
    for (int n = 2; n <= N; ++n) {
      const Vector<Real> prev = C.row(n - 1).transpose();
      const Vector<Real> prev2 = C.row(n - 2).transpose();
      C.row(n) = ((times_x(prev) - b.rec_.alpha[n - 1] * prev - b.rec_.beta[n - 1] * prev2) / b.rec_.beta[n]).transpose();
    }
    return b;
  }

private:
  OrthonormalBasis(const WeightParams& w, int N, BasisMethod m) : N_(N), method_(m), weight_(w) {}

  int N_ = 0;
  BasisMethod method_ = BasisMethod::automatic;
  WeightParams weight_;
  Matrix<Real> coeffs_;
  std::optional<Matrix<Real>> chol_;
  RecurrenceCoefficients<Real> rec_;
  double rcond_ = std::numeric_limits<double>::quiet_NaN();
};

/// Orthonormal basis of degree N. `automatic` tries the scaled Cholesky
/// factorization and switches to the recurrence when the factorization breaks
/// down, the Gram matrix is ill-conditioned, or nu^2 > 1.
template <Scalar Real = double>
OrthonormalBasis<Real> orthonormal_basis(const WeightParams& w, int N,
                                         BasisMethod method = BasisMethod::automatic) {
  w.validate();
  if (N < 0) throw InvalidArgument("orthonormal_basis: degree N must be >= 0");
  switch (method) {
    case BasisMethod::cholesky_scaled:
      return OrthonormalBasis<Real>::from_cholesky(w, N);
    case BasisMethod::recurrence:
      return OrthonormalBasis<Real>::from_recurrence(w, N);
    case BasisMethod::automatic:
      break;
  }
  if (w.nu2 > 1.0) return OrthonormalBasis<Real>::from_recurrence(w, N);
  double rcond = 0.0;
  try {
    auto b = OrthonormalBasis<Real>::from_cholesky(w, N);
    if (!b.ill_conditioned()) return b;
    rcond = b.gram_rcond();
  } catch (const CholeskyBreakdown&) {
  }
  return OrthonormalBasis<Real>::from_recurrence(w, N, rcond);
}

} // namespace asianlns
