#pragma once

// Scalar types and small numeric helpers shared by the deterministic core.
// Everything in model/basis/pricer is templated on the scalar so the same
// code runs in double and in quad precision.

#include <cmath>
#include <limits>
#include <numbers>
#include <type_traits>

#include <Eigen/Core>
#include <boost/math/special_functions/erf.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/float128.hpp>

namespace asianlns {

using quad = boost::multiprecision::float128;

template <class Real>
using Vector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
template <class Real>
using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

template <class Real>
concept Scalar = std::is_same_v<Real, double> || std::is_same_v<Real, quad>;

template <Scalar Real>
constexpr Real unit_roundoff() {
  return std::numeric_limits<Real>::epsilon() / 2;
}

template <Scalar Real>
double to_double(const Real& x) {
  return static_cast<double>(x);
}

/// Standard normal CDF. Infinite arguments map to 0/1.
template <Scalar Real>
Real norm_cdf(const Real& x) {
  using std::isinf;
  if (isinf(x)) return x > 0 ? Real(1) : Real(0);
  if constexpr (std::is_same_v<Real, double>) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
  } else {
    return Real(0.5) * boost::math::erfc(-x / boost::multiprecision::sqrt(Real(2)));
  }
}

template <Scalar Real>
Real norm_pdf(const Real& x) {
  using std::exp;
  using std::sqrt;
  return exp(-x * x / 2) / sqrt(2 * boost::math::constants::pi<Real>());
}

} // namespace asianlns
