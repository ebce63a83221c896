#pragma once

// The seven standard test cases for continuously sampled Asian calls
// (strike 2 throughout), with published reference prices from other methods.
// The reference columns are external values kept for comparison reports
// only; nothing in the library computes them.

#include <array>
#include <optional>

#include "market.hpp"

namespace asianlns {

struct BenchmarkCase {
  int id;
  MarketParams market;
  // Published series prices at N = 10, 15, 20 as printed (4-5 decimals).
  double lns10, lns15, lns20;
  int printed_decimals;
  // External reference values: Laguerre series (LS), eigenvalue expansion
  // (EE), PDE (VEC) and a control-variate MC 95% interval.
  double ls, ee, vec;
  double mc_lo, mc_hi;
};

inline constexpr std::array<BenchmarkCase, 7> benchmark_cases{{
    {1, {0.02, 0.10, 1.0, 2.0, 2.0}, .05601, .05600, .05599, 5, .0197, .05599, .05595, .05598, .05599},
    {2, {0.18, 0.30, 1.0, 2.0, 2.0}, .2185, .2184, .2184, 4, .2184, .2184, .2184, .2183, .2185},
    {3, {0.0125, 0.25, 2.0, 2.0, 2.0}, .1723, .1722, .1722, 4, .1723, .1723, .1723, .1722, .1724},
    {4, {0.05, 0.50, 1.0, 1.9, 2.0}, .1930, .1927, .1928, 4, .1932, .1932, .1932, .1929, .1933},
    {5, {0.05, 0.50, 1.0, 2.0, 2.0}, .2466, .2461, .2461, 4, .2464, .2464, .2464, .2461, .2466},
    {6, {0.05, 0.50, 1.0, 2.1, 2.0}, .3068, .3062, .3061, 4, .3062, .3062, .3062, .3060, .3065},
    {7, {0.05, 0.50, 2.0, 2.0, 2.0}, .3501, .3499, .3499, 4, .3501, .3501, .3500, .3494, .3504},
}};

/// Published series price for N in {10, 15, 20}.
inline std::optional<double> published_lns(const BenchmarkCase& c, int N) {
  switch (N) {
    case 10: return c.lns10;
    case 15: return c.lns15;
    case 20: return c.lns20;
    default: return std::nullopt;
  }
}

} // namespace asianlns
