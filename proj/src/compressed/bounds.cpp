#include "qmc/compressed/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace qmc::co {

namespace {

constexpr long double kE = 2.718281828459045235L;

long double power_branch(std::uint32_t s, long double i, long double n) {
  // (2e)^{(2^{s-2}-1)/2^{s-3}} * i^{(2^{s-1}-1)/2^{s-2}} / N^{(2^{s-2}-1)/2^{s-2}}
  const long double p2 = std::exp2(static_cast<long double>(s) - 2);  // 2^{s-2}
  const long double coeff = std::pow(2 * kE, (p2 - 1) / (p2 / 2));
  const long double ie = (2 * p2 - 1) / p2;
  const long double ne = (p2 - 1) / p2;
  return coeff * std::pow(i, ie) / std::pow(n, ne);
}

long double flat_branch(std::uint32_t s, long double n) {
  return 10.0L * std::pow(n, std::exp2(-static_cast<long double>(s)));
}

}  // namespace

long double h_curve(std::uint32_t s, long double i, long double n) {
  return std::fmax(power_branch(s, i, n), flat_branch(s, n));
}

BoundCurves bound_curves(std::uint32_t s, std::uint64_t i, std::uint32_t j, long double n) {
  if (s < 2) throw std::invalid_argument("bound_curves: s must be >= 2");
  if (n < 2) throw std::invalid_argument("bound_curves: N must be >= 2");
  BoundCurves r;
  const long double li = static_cast<long double>(i);

  r.f_bound = std::pow(kE * std::pow(li, 1.5L) / (j * std::sqrt(n)), j);
  r.h = h_curve(s, li, n);
  r.tail = std::exp2(-std::pow(n, std::exp2(-static_cast<long double>(s))));
  r.j_in_window = j <= std::pow(n, std::exp2(-static_cast<long double>(s)));
  r.i_in_window = li <= std::sqrt(n);

  // Smallest l with power branch strictly above the flat branch: invert the
  // power law, then fix up any rounding slop.
  const long double flat = flat_branch(s, n);
  const long double p2c = std::exp2(static_cast<long double>(s) - 2);
  const long double ie = (2 * p2c - 1) / p2c;
  const long double guess =
      std::pow(flat / std::pow(2 * kE, (p2c - 1) / (p2c / 2)) * std::pow(n, (p2c - 1) / p2c),
                1 / ie);
  std::uint64_t cross = guess > 4 ? static_cast<std::uint64_t>(guess) - 4 : 0;
  while (power_branch(s, static_cast<long double>(cross), n) <= flat) ++cross;
  while (cross > 0 && power_branch(s, static_cast<long double>(cross - 1), n) > flat) --cross;
  r.crossover = cross;

  // Exact sum A_{i,s} = sum_{l=0}^{i-1} sqrt(h_s(l)/N).
  long double a = 0;
  for (std::uint64_t l = 0; l < i; ++l)
    a += std::sqrt(h_curve(s, static_cast<long double>(l), n) / n);
  r.a_exact = a;

  // Upper estimate: integral bound on the power branch plus the exact count of
  // flat-branch terms. Each term of the exact sum is covered by one of the two
  // pieces, so the estimate dominates the sum.
  const long double p2 = std::exp2(static_cast<long double>(s) - 2);
  const long double alpha_half = (2 * p2 - 1) / (2 * p2);  // exponent of l in sqrt(power/N)
  const long double coeff = std::pow(2 * kE, (p2 - 1) / p2);
  const long double nexp = (2 * p2 - 1) / (2 * p2);
  const long double integral =
      coeff * std::pow(li, alpha_half + 1) / ((alpha_half + 1) * std::pow(n, nexp));
  const std::uint64_t flat_terms = std::min<std::uint64_t>(i, cross);
  r.a_estimate = integral + flat_terms * std::sqrt(flat / n);

  long double fact = 1;
  for (std::uint32_t l = 2; l <= j; ++l) fact *= l;
  r.g_bound = std::pow(r.a_exact, j) / fact + r.tail;
  return r;
}

}  // namespace qmc::co
