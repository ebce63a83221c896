#pragma once

#include <cmath>
#include <sstream>
#include <string>

#include "errors.hpp"

namespace asianlns {

/// Black-Scholes inputs for one continuously-sampled, fixed-strike
/// arithmetic Asian call.
struct MarketParams {
  double r = 0.0;      ///< short rate, may be negative
  double sigma = 0.0;  ///< volatility, > 0
  double T = 0.0;      ///< expiry in years, > 0
  double S0 = 1.0;     ///< initial stock price, > 0
  double K = 0.0;      ///< strike, >= 0 (K = 0 prices the discounted average)

  /// sigma^2 T, the regime parameter. The series is accurate for tau <= 0.5.
  double tau() const { return sigma * sigma * T; }
  bool high_tau() const { return tau() > 0.5; }

  void validate() const {
    auto bad = [](const char* name, double v, const char* rule) {
      std::ostringstream os;
      os << "invalid market parameter " << name << "=" << v << " (" << rule << ")";
      throw InvalidArgument(os.str());
    };
    if (!std::isfinite(r)) bad("r", r, "must be finite");
    if (!(sigma > 0) || !std::isfinite(sigma)) bad("sigma", sigma, "must be > 0");
    if (!(T > 0) || !std::isfinite(T)) bad("T", T, "must be > 0");
    if (!(S0 > 0) || !std::isfinite(S0)) bad("S0", S0, "must be > 0");
    if (!(K >= 0) || !std::isfinite(K)) bad("K", K, "must be >= 0");
  }

  /// Same problem with the initial price scaled to one.
  MarketParams normalized() const {
    MarketParams m = *this;
    m.K = K / S0;
    m.S0 = 1.0;
    return m;
  }
};

/// Parameters (mu, nu^2) of the log-normal weight defining L^2_w.
/// The variance nu^2 is stored directly so that defaulted values such as
/// nu^2 = sigma^2 T / 2 + 1e-4 are represented exactly.
struct WeightParams {
  double mu = 0.0;
  double nu2 = 0.0;

  double nu() const { return std::sqrt(nu2); }

  void validate() const {
    if (!std::isfinite(mu)) throw InvalidArgument("weight mu must be finite");
    if (!(nu2 > 0) || !std::isfinite(nu2)) throw InvalidArgument("weight nu^2 must be > 0");
  }

  /// True when the likelihood ratio of A_T/S0 lies in L^2_w.
  bool square_integrable_for(const MarketParams& m) const { return nu2 > 0.5 * m.sigma * m.sigma * m.T; }

  friend bool operator==(const WeightParams&, const WeightParams&) = default;
};

} // namespace asianlns
