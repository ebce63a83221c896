#pragma once

// Dense kernels for the small (N+1)x(N+1) lower-triangular systems that show
// up in the moment and basis computations.

#include <algorithm>
#include <cmath>
#include <cstdint>

#include <Eigen/Dense>

#include "errors.hpp"
#include "scalar.hpp"

namespace asianlns::linalg {

namespace detail {

// Numerator coefficients of the (13,13) Pade approximant to exp.
inline constexpr std::int64_t pade13[] = {64764752532480000, 32382376266240000, 7771770303897600,
                                          1187353796428800,  129060195264000,   10559470521600,
                                          670442572800,      33522128640,       1323241920,
                                          40840800,          960960,            16380,
                                          182,               1};

// Largest ||A||_1 for which the (13,13) approximant is accurate to the unit
// roundoff of Real. For double this is the usual 5.37; for other types it
// follows from the leading term of the truncation error,
// (13!)^2 / (26! 27!) ||A||^27 <= u.
template <Scalar Real>
Real pade13_theta() {
  if constexpr (std::is_same_v<Real, double>) {
    return 5.371920351148152;
  } else {
    using std::exp;
    using std::log;
    Real log_c = 0;
    for (int k = 1; k <= 13; ++k) log_c += 2 * log(Real(k));
    for (int k = 1; k <= 26; ++k) log_c -= log(Real(k));
    for (int k = 1; k <= 27; ++k) log_c -= log(Real(k));
    return exp((log(unit_roundoff<Real>()) - log_c) / 27);
  }
}

} // namespace detail

/// Matrix exponential of a lower-triangular matrix by scaling and squaring
/// with the (13,13) Pade approximant. The Pade denominator is lower
/// triangular as well, so it is solved by substitution; this keeps the
/// leading principal blocks of the result independent of the trailing rows
/// of A (no pivoting across rows).
template <Scalar Real>
Matrix<Real> expm_lower(const Matrix<Real>& A) {
  using std::ceil;
  using std::log2;
  const Eigen::Index n = A.rows();
  if (n == 0) return A;

  const Real norm1 = A.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  const Real theta = detail::pade13_theta<Real>();
  if (norm1 > theta) squarings = static_cast<int>(to_double(ceil(log2(norm1 / theta))));

  Matrix<Real> X = A;
  if (squarings > 0) {
    using std::ldexp;
    X /= Real(std::ldexp(1.0, squarings));
  }

  auto b = [](int k) { return Real(detail::pade13[k]); };
  const Matrix<Real> I = Matrix<Real>::Identity(n, n);
  const Matrix<Real> X2 = X * X;
  const Matrix<Real> X4 = X2 * X2;
  const Matrix<Real> X6 = X4 * X2;

  Matrix<Real> inner = b(13) * X6 + b(11) * X4 + b(9) * X2;
  Matrix<Real> U = X6 * inner;
  U += b(7) * X6 + b(5) * X4 + b(3) * X2 + b(1) * I;
  U = (X * U).eval();

  inner = b(12) * X6 + b(10) * X4 + b(8) * X2;
  Matrix<Real> V = X6 * inner;
  V += b(6) * X6 + b(4) * X4 + b(2) * X2 + b(0) * I;

  const Matrix<Real> P = V + U;
  const Matrix<Real> Q = V - U;
  Matrix<Real> E = Q.template triangularView<Eigen::Lower>().solve(P);
  E.template triangularView<Eigen::StrictlyUpper>().setZero();

  for (int k = 0; k < squarings; ++k) E = (E * E).eval();
  return E;
}

/// Cholesky factor L (lower, positive diagonal) of a symmetric matrix.
/// Throws CholeskyBreakdown with the index of the first non-positive pivot.
template <Scalar Real>
Matrix<Real> cholesky(const Matrix<Real>& M) {
  using std::sqrt;
  const Eigen::Index n = M.rows();
  Matrix<Real> L = Matrix<Real>::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Real d = M(j, j);
    for (Eigen::Index k = 0; k < j; ++k) d -= L(j, k) * L(j, k);
    if (!(d > 0)) throw CholeskyBreakdown(static_cast<int>(j));
    L(j, j) = sqrt(d);
    for (Eigen::Index i = j + 1; i < n; ++i) {
      Real s = M(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
      L(i, j) = s / L(j, j);
    }
  }
  return L;
}

/// Reciprocal condition estimate of M = L L^T from the Cholesky pivots,
/// (min L_ii / max L_ii)^2. It can only decrease as rows are appended.
template <Scalar Real>
double pivot_rcond(const Matrix<Real>& L) {
  if (L.rows() == 0) return 1.0;
  const Real lo = L.diagonal().minCoeff();
  const Real hi = L.diagonal().maxCoeff();
  const double ratio = to_double(lo / hi);
  return ratio * ratio;
}

/// Inverse of a lower-triangular matrix.
template <Scalar Real>
Matrix<Real> lower_inverse(const Matrix<Real>& L) {
  const Eigen::Index n = L.rows();
  Matrix<Real> inv = L.template triangularView<Eigen::Lower>().solve(Matrix<Real>::Identity(n, n));
  inv.template triangularView<Eigen::StrictlyUpper>().setZero();
  return inv;
}

} // namespace asianlns::linalg
