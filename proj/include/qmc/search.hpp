#pragma once

#include <cstdint>
#include <optional>

#include "qmc/statevector.hpp"

namespace qmc {

// Growth factor for the exponential search with unknown marked count.
inline constexpr double kExpSearchLambda = 6.0 / 5.0;

// Grover with known marked count t: floor(pi/4 * sqrt(dim/t)) iterations,
// one measurement, classical verification. Quantum queries == iterations.
std::optional<std::size_t> grover_known_count(const PhasePredicate& pred, std::uint64_t t,
                                              Rng& rng, QueryLedger& ledger);

// Exponential search (unknown t): m <- 1; repeat { j uniform in [0,m), run j
// iterations, measure, verify classically; m <- min(lambda*m, sqrt(dim)) }.
// The budget caps quantum queries only; exhaustion is a normal empty return.
std::optional<std::size_t> grover_unknown_count(const PhasePredicate& pred, Rng& rng,
                                                QueryLedger& ledger, std::uint64_t query_budget);

// sin^2((2q+1) asin(sqrt(t/dim))) -- the exact success law.
double analytic_success(std::uint64_t q, std::uint64_t t, std::uint64_t dim);

// min(1, (pi^2/4)(2q+1)^2 t/dim): a rigorous quadratic cap on the sine law.
double success_envelope(std::uint64_t q, std::uint64_t t, std::uint64_t dim);

}  // namespace qmc
