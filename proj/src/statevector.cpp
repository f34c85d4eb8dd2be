#include "qmc/statevector.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace qmc {

double StateVector::norm_sq() const {
  double s = 0;
  for (const auto& a : amp) s += std::norm(a);
  return s;
}

void PhasePredicate::recount() {
  marked_count = 0;
  for (auto b : mask) marked_count += b != 0;
}

StateVector uniform_superposition(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("uniform_superposition: dim must be >= 1");
  StateVector s;
  s.amp.assign(dim, std::complex<double>(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
  return s;
}

void apply_phase_oracle(StateVector& state, const PhasePredicate& pred, QueryLedger& ledger) {
  if (state.dim() != pred.dim())
    throw std::invalid_argument("apply_phase_oracle: dimension mismatch");
  ++ledger.quantum;
  for (std::size_t x = 0; x < state.dim(); ++x)
    if (pred.mask[x]) state.amp[x] = -state.amp[x];
}

void apply_diffusion(StateVector& state) {
  std::complex<double> mean(0, 0);
  for (const auto& a : state.amp) mean += a;
  mean /= static_cast<double>(state.dim());
  const std::complex<double> twice = 2.0 * mean;
  for (auto& a : state.amp) a = twice - a;
}

std::size_t measure(const StateVector& state, Rng& rng) {
  const double n2 = state.norm_sq();
  if (std::abs(n2 - 1.0) > 1e-9)
    throw std::runtime_error("measure: state norm corrupted");
  double r = rng.real() * n2;
  for (std::size_t x = 0; x < state.dim(); ++x) {
    r -= std::norm(state.amp[x]);
    if (r <= 0) return x;
  }
  return state.dim() - 1;  // rounding fell off the end
}

double marked_probability(const StateVector& state, const PhasePredicate& pred) {
  if (state.dim() != pred.dim())
    throw std::invalid_argument("marked_probability: dimension mismatch");
  double p = 0;
  for (std::size_t x = 0; x < state.dim(); ++x)
    if (pred.mask[x]) p += std::norm(state.amp[x]);
  return p;
}

}  // namespace qmc
