#pragma once

#include <cstdint>

namespace qmc::co {

// Closed-form reference curves controlling the collision projection masses.
// All evaluation is in long double, decoupled from the double-precision
// simulator, because the 2^{-N^{1/2^s}}-style tails underflow doubles first.
struct BoundCurves {
  long double f_bound = 0;      // (e * i^{3/2} / (j sqrt(N)))^j
  long double h = 0;            // h_s(i)
  long double a_exact = 0;      // A_{i,s} = sum_{l<i} sqrt(h_s(l)/N)
  long double a_estimate = 0;   // closed-form upper estimate, >= a_exact
  long double g_bound = 0;      // a_exact^j / j! + tail
  long double tail = 0;         // 2^{-N^{1/2^s}}
  std::uint64_t crossover = 0;  // smallest i where the power branch of h_s wins
  bool j_in_window = true;      // j <= N^{1/2^s}
  bool i_in_window = true;      // i <= sqrt(N)
};

long double h_curve(std::uint32_t s, long double i, long double n);

// s >= 2; the s >= 3 curves follow the recursion-controlling definitions, the
// s = 2 f_bound is the direct projection bound.
BoundCurves bound_curves(std::uint32_t s, std::uint64_t i, std::uint32_t j, long double n);

}  // namespace qmc::co
