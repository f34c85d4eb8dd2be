#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qmc/oracle.hpp"
#include "qmc/rng.hpp"

namespace qmc {

// Complex amplitude array over the current search domain.
struct StateVector {
  std::vector<std::complex<double>> amp;
  std::size_t dim() const { return amp.size(); }
  double norm_sq() const;
};

// Boolean predicate over [0, dim), materialized as a byte mask.
struct PhasePredicate {
  std::vector<std::uint8_t> mask;
  std::size_t marked_count = 0;

  std::size_t dim() const { return mask.size(); }
  bool accepts(std::size_t x) const { return mask[x] != 0; }
  void recount();
};

StateVector uniform_superposition(std::size_t dim);

// Negates the amplitude of every accepting point; one quantum query.
void apply_phase_oracle(StateVector& state, const PhasePredicate& pred, QueryLedger& ledger);

// Inversion about the mean: amp <- 2*mean - amp.
void apply_diffusion(StateVector& state);

// Samples an index with probability |amp|^2. Rejects corrupted states
// (squared norm off by more than 1e-9).
std::size_t measure(const StateVector& state, Rng& rng);

// Sum of |amp|^2 over accepting points.
double marked_probability(const StateVector& state, const PhasePredicate& pred);

}  // namespace qmc
