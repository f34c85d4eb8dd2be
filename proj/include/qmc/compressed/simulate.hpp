#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "qmc/compressed/circuit.hpp"

namespace qmc::co {

// A claimed input/output pair for the real oracle.
struct ClaimPair {
  std::uint32_t x = 0;
  std::uint32_t y = 0;
};
// Maps a measured adversary outcome (x,u,z) to the claimed pairs.
using ClaimFn = std::function<std::vector<ClaimPair>(std::uint32_t x, std::uint32_t u,
                                                     std::uint32_t z)>;

enum class OracleMode { standard, phase };

// ---------------------------------------------------------------------------
// Brute force: dense state over (x,u,z) x all N^M truth tables.
// ---------------------------------------------------------------------------

struct BruteforceResult {
  std::vector<double> outcome;  // length M*N*Z: measurement distribution of (x,u,z)
  // Probability that the measured outcome's claimed pairs all hold for the
  // (entangled) truth table register.
  double claim_probability(const ClaimFn& claims) const;

  std::uint32_t m = 0, n = 0, z = 0;
  std::vector<cplx> state;  // dense final amplitudes, truth-table-major inner index
};

BruteforceResult bruteforce_run(const AdversaryCircuit& circuit,
                                OracleMode mode = OracleMode::standard,
                                std::uint64_t amplitude_guard = 10'000'000);

// ---------------------------------------------------------------------------
// Compressed phase-oracle simulation: sparse superposition over
// (x,u,z,D) with D a sorted list of (point, value) pairs.
// ---------------------------------------------------------------------------

struct JointState {
  enum class Rep { phase, fourier };
  std::uint32_t m = 0, n = 0, z = 0;
  Rep rep = Rep::phase;
  // Key bytes: x, u, z, |D|, then (x_i, v_i) sorted by x_i.
  std::unordered_map<std::string, cplx> amps;
  double pruned_mass = 0;  // squared-norm removed by pruning, never silently dropped

  double norm_sq() const;
};

std::string encode_key(std::uint32_t x, std::uint32_t u, std::uint32_t z,
                       const std::vector<std::pair<std::uint8_t, std::uint8_t>>& db);

// Number of distinct images with at least s preimages in the database bytes
// of `key`.
std::uint32_t collision_count(const std::string& key, std::uint32_t s);
std::uint32_t database_size(const std::string& key);

// Per-step record of projection masses (amplitudes, i.e. sqrt of summed
// probability) taken after the step was applied.
struct StepRecord {
  Step::Type type = Step::Type::query;
  std::uint32_t query_index = 0;      // 1-based; 0 for non-query steps
  std::vector<double> f;              // f[j-1] = mass(>= j distinct 2-collisions)
  std::vector<double> g;              // g[k-1] = mass(>= k distinct 3-collisions)
  std::vector<std::vector<double>> g_exact;  // g_exact[j][k-1]: exactly j 2-colls, >= k 3-colls
  double norm_sq = 1;
  double pruned_mass = 0;
};

struct AmplitudeTrace {
  std::uint32_t n = 0;
  std::uint32_t max_j = 0, max_k = 0;
  std::vector<StepRecord> steps;  // steps[0] is the initial state
};

struct CompressedResult {
  std::vector<double> outcome;  // adversary measurement distribution, length M*N*Z
  JointState final_state;       // phase representation
  AmplitudeTrace trace;
  double claim_probability(const ClaimFn& claims) const;  // pairs present in D
};

CompressedResult compressed_run(const AdversaryCircuit& circuit,
                                OracleMode mode = OracleMode::standard,
                                std::uint64_t amplitude_guard = 40'000'000);

// Sorted sparse database of (point, value) pairs.
using Database = std::vector<std::pair<std::uint8_t, std::uint8_t>>;

// The Fourier-side update D (+)= (x, u) over the additive group Z_N: insert
// when x is absent and u != 0; otherwise add mod N, dropping the entry when
// the value cancels to 0.
Database fourier_db_update(const Database& db, std::uint32_t x, std::uint32_t u,
                           std::uint32_t n);

// Same adversary dynamics with the database kept in the Fourier digit
// representation, where a query is a pure basis-state rewrite. The result
// carries no trace (collisions are counted in the value basis only).
CompressedResult compressed_fourier_run(const AdversaryCircuit& circuit,
                                        OracleMode mode = OracleMode::standard,
                                        std::uint64_t amplitude_guard = 40'000'000);

// Expands every database entry of a Fourier-representation state through the
// per-entry QFT, giving the value-basis (phase) representation.
JointState to_phase_representation(const JointState& state);

// Projection-mass spec: at least `min_s_collisions` distinct s-collisions;
// optionally additionally "exactly j 2-collisions".
struct ProjectionSpec {
  std::uint32_t s = 2;
  std::uint32_t min_count = 1;
  bool exact_two_collisions = false;
  std::uint32_t exact_j = 0;  // used when exact_two_collisions
};

double projection_mass(const JointState& state, const ProjectionSpec& spec);

// Largest |p - q| summed over outcomes / 2.
double total_variation(const std::vector<double>& p, const std::vector<double>& q);

}  // namespace qmc::co
