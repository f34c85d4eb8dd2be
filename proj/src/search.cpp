#include "qmc/search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qmc {

namespace {

std::size_t run_iterations(StateVector& state, const PhasePredicate& pred,
                           std::uint64_t iterations, QueryLedger& ledger) {
  for (std::uint64_t i = 0; i < iterations; ++i) {
    apply_phase_oracle(state, pred, ledger);
    apply_diffusion(state);
  }
  return iterations;
}

}  // namespace

std::optional<std::size_t> grover_known_count(const PhasePredicate& pred, std::uint64_t t,
                                              Rng& rng, QueryLedger& ledger) {
  if (t == 0) throw std::invalid_argument("grover_known_count: no marked points");
  const std::size_t dim = pred.dim();
  const auto iterations = static_cast<std::uint64_t>(
      std::floor(M_PI / 4.0 * std::sqrt(static_cast<double>(dim) / static_cast<double>(t))));
  auto state = uniform_superposition(dim);
  run_iterations(state, pred, iterations, ledger);
  const std::size_t x = measure(state, rng);
  ++ledger.classical;
  if (pred.accepts(x)) return x;
  return std::nullopt;
}

std::optional<std::size_t> grover_unknown_count(const PhasePredicate& pred, Rng& rng,
                                                QueryLedger& ledger, std::uint64_t query_budget) {
  if (query_budget == 0) throw std::invalid_argument("grover_unknown_count: budget must be >= 1");
  const std::size_t dim = pred.dim();
  const double m_cap = std::max(1.0, std::sqrt(static_cast<double>(dim)));
  double m = 1.0;
  std::uint64_t spent = 0;
  // Attempt cap keeps degenerate instances (e.g. dim 1, nothing marked) from
  // spinning forever on zero-iteration draws.
  const std::uint64_t max_attempts = 8 * (query_budget + 8);
  for (std::uint64_t attempt = 0; attempt < max_attempts && spent < query_budget; ++attempt) {
    // j uniform in [0, m) with real-valued m, truncated to whole iterations.
    const auto j = static_cast<std::uint64_t>(rng.real() * m);
    const std::uint64_t iterations = std::min<std::uint64_t>(j, query_budget - spent);
    auto state = uniform_superposition(dim);
    spent += run_iterations(state, pred, iterations, ledger);
    const std::size_t x = measure(state, rng);
    ++ledger.classical;
    if (pred.accepts(x)) return x;
    m = std::min(kExpSearchLambda * m, m_cap);
  }
  return std::nullopt;
}

double analytic_success(std::uint64_t q, std::uint64_t t, std::uint64_t dim) {
  if (t > dim) throw std::invalid_argument("analytic_success: t must be <= dim");
  const double theta = std::asin(std::sqrt(static_cast<double>(t) / static_cast<double>(dim)));
  const double s = std::sin((2.0 * static_cast<double>(q) + 1.0) * theta);
  return s * s;
}

double success_envelope(std::uint64_t q, std::uint64_t t, std::uint64_t dim) {
  // sin((2q+1)θ) <= (2q+1)θ and asin(x) <= (π/2)x give a rigorous quadratic
  // cap on the exact sine law.
  const double m = 2.0 * static_cast<double>(q) + 1.0;
  const double v = (M_PI * M_PI / 4.0) * m * m * static_cast<double>(t) /
                   static_cast<double>(dim);
  return std::min(1.0, v);
}

}  // namespace qmc
