#include "qmc/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

namespace qmc {

FunctionTable sample_random_function(std::uint64_t m, std::uint64_t n, std::uint64_t seed) {
  if (m == 0 || n == 0) throw std::invalid_argument("sample_random_function: M, N must be >= 1");
  FunctionTable f;
  f.domain_size = m;
  f.codomain_size = n;
  f.kind = TableKind::random;
  f.k = 0;
  f.seed = seed;
  f.table.resize(m);
  Rng rng(seed);
  for (auto& v : f.table) v = static_cast<std::uint32_t>(rng.below(n));
  return f;
}

FunctionTable build_k_to_1(std::uint32_t k, std::uint64_t n, std::uint64_t seed) {
  if (k == 0 || n == 0) throw std::invalid_argument("build_k_to_1: k, N must be >= 1");
  FunctionTable f;
  f.domain_size = static_cast<std::uint64_t>(k) * n;
  f.codomain_size = n;
  f.kind = TableKind::k_to_1;
  f.k = k;
  f.seed = seed;
  std::vector<std::uint64_t> perm(f.domain_size);
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(seed);
  for (std::uint64_t i = f.domain_size; i > 1; --i)
    std::swap(perm[i - 1], perm[rng.below(i)]);
  f.table.resize(f.domain_size);
  for (std::uint64_t idx = 0; idx < f.domain_size; ++idx)
    f.table[perm[idx]] = static_cast<std::uint32_t>(idx / k);
  return f;
}

Fraction mu_good_fraction(const FunctionTable& f, std::uint32_t k) {
  std::vector<std::uint64_t> preimage_count(f.codomain_size, 0);
  for (auto v : f.table) ++preimage_count[v];
  std::uint64_t good = 0;
  for (auto v : f.table)
    if (preimage_count[v] >= k) ++good;
  return Fraction{good, f.domain_size};
}

bool verify_k_collision(const FunctionTable& f, std::span<const std::uint64_t> candidate,
                        QueryLedger& ledger) {
  ledger.classical += candidate.size();
  if (candidate.size() < 2) return false;
  std::unordered_set<std::uint64_t> seen;
  const std::uint32_t image = f(candidate.front());
  for (auto x : candidate) {
    if (x >= f.domain_size) return false;
    if (!seen.insert(x).second) return false;
    if (f(x) != image) return false;
  }
  return true;
}

FunctionTable restrict_domain(const FunctionTable& f, std::uint64_t size) {
  if (size == 0 || size > f.domain_size)
    throw std::invalid_argument("restrict_domain: size must be in [1, M]");
  FunctionTable g = f;
  g.domain_size = size;
  g.table.resize(size);
  return g;
}

std::string serialize_table(const FunctionTable& f) {
  nlohmann::json j;
  j["m"] = f.domain_size;
  j["n"] = f.codomain_size;
  j["seed"] = f.seed;
  j["kind"] = f.kind == TableKind::random ? "random" : "k_to_1";
  j["k"] = f.k;
  return j.dump();
}

FunctionTable parse_table(const std::string& json_text) {
  const auto j = nlohmann::json::parse(json_text);
  const std::uint64_t m = j.at("m").get<std::uint64_t>();
  const std::uint64_t n = j.at("n").get<std::uint64_t>();
  const std::uint64_t seed = j.at("seed").get<std::uint64_t>();
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "random") {
    auto f = sample_random_function(m, n, seed);
    return m == f.domain_size ? f : restrict_domain(f, m);
  }
  if (kind == "k_to_1") {
    const auto k = j.at("k").get<std::uint32_t>();
    auto f = build_k_to_1(k, n, seed);
    return m == f.domain_size ? f : restrict_domain(f, m);
  }
  throw std::invalid_argument("parse_table: unknown kind " + kind);
}

}  // namespace qmc
