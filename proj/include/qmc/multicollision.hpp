#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qmc/oracle.hpp"
#include "qmc/rng.hpp"

namespace qmc {

// List sizes t_1..t_k with t_i = max(1, round(N^((2^(k-i)-1)/(2^k-1)))).
struct LevelSchedule {
  std::uint32_t k = 0;
  std::uint64_t n = 0;
  std::vector<std::uint64_t> sizes;
};

LevelSchedule level_schedule(std::uint32_t k, std::uint64_t n);

// Target exponent (2^(k-1)-1)/(2^k-1) of the shared-list algorithm.
double multicollision_exponent(std::uint32_t k);
// Exponent (3^(k-1)-1)/(2*3^(k-1)) of the recursive list-per-entry algorithm.
double hsx_exponent(std::uint32_t k);

struct FindResult {
  bool success = false;
  CollisionRecord record;  // meaningful only on success
  QueryLedger ledger;
  std::uint64_t duplicate_hits = 0;  // level hits that deepened an existing entry
};

// Shared-list k-collision finder: classical level-1 list, then per level i a
// Grover predicate over images of the (i-1)-level list, reusing one list for
// all t_i runs. Restricts the domain to k*N points when it is larger.
FindResult find_multicollision_paper(const FunctionTable& f, std::uint32_t k, Rng& rng,
                                     double budget_multiplier);

// List-then-Grover 2-collision finder with t = round(N^(1/3)) samples.
FindResult find_collision_bht(const FunctionTable& f, Rng& rng, std::uint64_t budget);

// Recursive finder that rebuilds fresh sub-lists per entry (no amortization);
// top-level list size round(N^(1/3^(k-1))).
FindResult find_multicollision_hsx(const FunctionTable& f, std::uint32_t k, Rng& rng,
                                   std::uint64_t budget);

// Classical birthday generalization: random points bucketed by image until a
// bucket reaches size k. Classical ledger only.
FindResult find_multicollision_classical(const FunctionTable& f, std::uint32_t k, Rng& rng);

// Result record as JSON: {"algo","k","n_log2","seed","success","quantum_queries",
// "classical_queries","budget_multiplier","wall_ms"}.
std::string result_record_json(const std::string& algo, std::uint32_t k, double n_log2,
                               std::uint64_t seed, const FindResult& r, double budget_multiplier,
                               double wall_ms);

}  // namespace qmc
