#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qmc/rng.hpp"

namespace qmc::co {

using cplx = std::complex<double>;

// One adversary step. `unitary` carries an explicit matrix over the combined
// adversary registers (x,u,z), dimension M*N*Z. `add_const` is the cheap
// structured unitary |r> -> |r + value mod dim(r)> used by classical-style
// adversaries (it avoids dense matrices at larger N).
struct Step {
  enum class Type { query, unitary, add_const };
  Type type = Type::query;
  std::vector<std::vector<cplx>> matrix;  // unitary only
  char target = 'x';                      // add_const only: 'x', 'u' or 'z'
  std::uint32_t value = 0;                // add_const only
};

struct AdversaryCircuit {
  std::uint32_t m = 2;  // query register size
  std::uint32_t n = 2;  // response register size
  std::uint32_t z = 1;  // private register size
  std::vector<Step> steps;

  std::uint32_t adversary_dim() const { return m * n * z; }
  std::uint32_t query_count() const;
};

// Largest matrix/unitary deviation from U U^dagger = I.
double unitarity_defect(const std::vector<std::vector<cplx>>& u);

// Haar-ish random unitary over dim (complex Gaussian + Gram-Schmidt).
std::vector<std::vector<cplx>> random_unitary(std::uint32_t dim, Rng& rng);

// q queries with random unitaries before, between and after.
AdversaryCircuit random_circuit(std::uint32_t m, std::uint32_t n, std::uint32_t z,
                                std::uint32_t q, Rng& rng);

// Classical list-building adversary: sets the query register to points
// 0,1,...,q-1 and queries each once.
AdversaryCircuit classical_probe_circuit(std::uint32_t m, std::uint32_t n, std::uint32_t q);

// JSON {"m","n","z","steps":[{"type":"query"}|{"type":"unitary","matrix":...}
//   |{"type":"add_const","target":...,"value":...}]}
std::string circuit_to_json(const AdversaryCircuit& c);
AdversaryCircuit circuit_from_json(const std::string& text);

}  // namespace qmc::co
