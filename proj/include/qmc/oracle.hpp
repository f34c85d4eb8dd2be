#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qmc/rng.hpp"

namespace qmc {

enum class TableKind { random, k_to_1 };

// Exact query accounting: one phase-oracle application = one quantum query,
// one table lookup in a classical procedure = one classical query.
struct QueryLedger {
  std::uint64_t quantum = 0;
  std::uint64_t classical = 0;
};

// Explicit oracle F : [0,M) -> [0,N), regenerable from its seed.
struct FunctionTable {
  std::uint64_t domain_size = 0;    // M
  std::uint64_t codomain_size = 0;  // N
  TableKind kind = TableKind::random;
  std::uint32_t k = 0;  // arity parameter for k_to_1 tables, 0 otherwise
  std::uint64_t seed = 0;
  std::vector<std::uint32_t> table;

  std::uint32_t operator()(std::uint64_t x) const { return table[x]; }
};

// A claimed k-collision: k distinct preimages sharing one image.
struct CollisionRecord {
  std::uint32_t arity = 0;
  std::vector<std::uint64_t> preimages;
  std::uint32_t image = 0;
  QueryLedger queries_spent;
};

// Exact rational in [0,1]; kept unreduced, compared by cross-multiplication.
struct Fraction {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  bool at_least(std::uint64_t p, std::uint64_t q) const {  // num/den >= p/q
    return static_cast<unsigned __int128>(num) * q >=
           static_cast<unsigned __int128>(p) * den;
  }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Each entry independently uniform in [0,N) under the seeded generator.
FunctionTable sample_random_function(std::uint64_t m, std::uint64_t n, std::uint64_t seed);

// M = k*N; every image has exactly k preimages, assigned through a seeded
// uniform permutation of the domain.
FunctionTable build_k_to_1(std::uint32_t k, std::uint64_t n, std::uint64_t seed);

// |{x : |F^-1(F(x))| >= k}| / M, exactly.
Fraction mu_good_fraction(const FunctionTable& f, std::uint32_t k);

// True iff all candidate points are distinct and share one image. Books
// |candidate| classical queries; never touches the quantum counter.
bool verify_k_collision(const FunctionTable& f, std::span<const std::uint64_t> candidate,
                        QueryLedger& ledger);

// The table restricted to its first `size` domain points.
FunctionTable restrict_domain(const FunctionTable& f, std::uint64_t size);

// JSON {"m":M,"n":N,"seed":s,"kind":"random"|"k_to_1","k":k}. Tables are
// regenerated from the seed, never stored entry by entry.
std::string serialize_table(const FunctionTable& f);
FunctionTable parse_table(const std::string& json_text);

}  // namespace qmc
