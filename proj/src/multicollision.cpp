#include "qmc/multicollision.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "qmc/search.hpp"
#include "qmc/statevector.hpp"

namespace qmc {

namespace {

struct Entry {
  std::uint32_t image = 0;
  std::vector<std::uint64_t> preimages;
  std::uint32_t arity() const { return static_cast<std::uint32_t>(preimages.size()); }
};

// Working store for collision lists: entries keyed by image, a used-point
// mask for predicate construction, and arity counts per level.
struct EntryStore {
  std::vector<Entry> entries;
  std::unordered_map<std::uint32_t, std::size_t> by_image;
  std::vector<std::uint8_t> used;  // over the (restricted) domain

  explicit EntryStore(std::uint64_t domain) : used(domain, 0) {}

  // Adds x with image y; returns the entry's new arity.
  std::uint32_t add(std::uint64_t x, std::uint32_t y) {
    used[x] = 1;
    auto it = by_image.find(y);
    if (it == by_image.end()) {
      by_image.emplace(y, entries.size());
      entries.push_back(Entry{y, {x}});
      return 1;
    }
    auto& e = entries[it->second];
    e.preimages.push_back(x);
    return e.arity();
  }

  std::uint64_t count_with_arity_at_least(std::uint32_t a) const {
    std::uint64_t c = 0;
    for (const auto& e : entries) c += e.arity() >= a;
    return c;
  }
};

// Marked set: x unused and F(x) an image whose entry has arity >= min_arity.
PhasePredicate level_predicate(const FunctionTable& f, const EntryStore& store,
                               std::uint32_t min_arity) {
  PhasePredicate pred;
  pred.mask.assign(f.domain_size, 0);
  std::vector<std::uint8_t> image_ok(f.codomain_size, 0);
  for (const auto& e : store.entries)
    if (e.arity() >= min_arity) image_ok[e.image] = 1;
  for (std::uint64_t x = 0; x < f.domain_size; ++x)
    pred.mask[x] = image_ok[f(x)] && !store.used[x];
  pred.recount();
  return pred;
}

FindResult success_result(const FunctionTable& f, const Entry& e, std::uint32_t k,
                          QueryLedger ledger, std::uint64_t duplicate_hits) {
  FindResult r;
  r.record.arity = k;
  r.record.preimages.assign(e.preimages.begin(), e.preimages.begin() + k);
  r.record.image = e.image;
  if (!verify_k_collision(f, r.record.preimages, ledger))
    throw std::runtime_error("internal: collision record failed verification");
  r.record.queries_spent = ledger;
  r.ledger = ledger;
  r.duplicate_hits = duplicate_hits;
  r.success = true;
  return r;
}

FindResult failure_result(QueryLedger ledger, std::uint64_t duplicate_hits) {
  FindResult r;
  r.ledger = ledger;
  r.duplicate_hits = duplicate_hits;
  return r;
}

}  // namespace

LevelSchedule level_schedule(std::uint32_t k, std::uint64_t n) {
  if (k < 2 || n < 2) throw std::invalid_argument("level_schedule: need k >= 2, N >= 2");
  LevelSchedule s;
  s.k = k;
  s.n = n;
  s.sizes.resize(k);
  const double denom = std::pow(2.0, k) - 1.0;
  for (std::uint32_t i = 1; i <= k; ++i) {
    const double expo = (std::pow(2.0, k - i) - 1.0) / denom;
    const auto t = static_cast<std::uint64_t>(
        std::llround(std::pow(static_cast<double>(n), expo)));
    s.sizes[i - 1] = std::max<std::uint64_t>(1, t);
  }
  s.sizes[k - 1] = 1;
  return s;
}

double multicollision_exponent(std::uint32_t k) {
  return (std::pow(2.0, k - 1) - 1.0) / (std::pow(2.0, k) - 1.0);
}

double hsx_exponent(std::uint32_t k) {
  const double p = std::pow(3.0, k - 1);
  return (p - 1.0) / (2.0 * p);
}

FindResult find_multicollision_paper(const FunctionTable& f_in, std::uint32_t k, Rng& rng,
                                     double budget_multiplier) {
  if (k < 2) throw std::invalid_argument("find_multicollision_paper: k must be >= 2");
  const std::uint64_t n = f_in.codomain_size;
  const FunctionTable f = f_in.domain_size > k * n && k * n >= 1
                              ? restrict_domain(f_in, k * n)
                              : f_in;
  const auto sched = level_schedule(k, n);
  const auto overall_budget = static_cast<std::uint64_t>(std::ceil(
      budget_multiplier * k * std::pow(static_cast<double>(n), multicollision_exponent(k))));

  QueryLedger ledger;
  EntryStore store(f.domain_size);
  std::uint64_t duplicate_hits = 0;

  // Level 1: t_1 classical queries on distinct random points.
  const std::uint64_t t1 = std::min<std::uint64_t>(sched.sizes[0], f.domain_size);
  for (std::uint64_t i = 0; i < t1; ++i) {
    std::uint64_t x;
    do {
      x = rng.below(f.domain_size);
    } while (store.used[x]);
    ++ledger.classical;
    const std::uint32_t arity = store.add(x, f(x));
    if (arity >= k)
      return success_result(f, store.entries[store.by_image.at(f(x))], k, ledger, duplicate_hits);
  }

  // Levels 2..k: t_i Grover runs against the shared level-(i-1) list.
  for (std::uint32_t level = 2; level <= k; ++level) {
    const std::uint64_t target = sched.sizes[level - 1];
    const std::uint64_t t_prev = sched.sizes[level - 2];
    const auto per_run = static_cast<std::uint64_t>(std::ceil(
        budget_multiplier * std::sqrt(static_cast<double>(n) / static_cast<double>(t_prev))));
    auto pred = level_predicate(f, store, level - 1);
    while (store.count_with_arity_at_least(level) < target) {
      if (ledger.quantum >= overall_budget) return failure_result(ledger, duplicate_hits);
      const std::uint64_t run_budget =
          std::max<std::uint64_t>(1, std::min(per_run, overall_budget - ledger.quantum));
      const auto hit = grover_unknown_count(pred, rng, ledger, run_budget);
      if (!hit) continue;  // retry within the overall budget
      const std::uint64_t x = *hit;
      ++ledger.classical;
      const std::uint32_t y = f(x);
      const std::uint32_t arity = store.add(x, y);
      if (arity > level) ++duplicate_hits;
      if (arity >= k)
        return success_result(f, store.entries[store.by_image.at(y)], k, ledger, duplicate_hits);
      pred = level_predicate(f, store, level - 1);
    }
  }
  // k-collision is produced inside the level-k loop; reaching here means the
  // target count was met by entries deepened past k, which success-returns.
  return failure_result(ledger, duplicate_hits);
}

FindResult find_collision_bht(const FunctionTable& f, Rng& rng, std::uint64_t budget) {
  const std::uint64_t n = f.codomain_size;
  const auto t = std::max<std::uint64_t>(
      1, static_cast<std::uint64_t>(std::llround(std::cbrt(static_cast<double>(n)))));
  QueryLedger ledger;
  EntryStore store(f.domain_size);
  for (std::uint64_t i = 0; i < std::min(t, f.domain_size); ++i) {
    std::uint64_t x;
    do {
      x = rng.below(f.domain_size);
    } while (store.used[x]);
    ++ledger.classical;
    if (store.add(x, f(x)) >= 2)  // collision inside the initial list
      return success_result(f, store.entries[store.by_image.at(f(x))], 2, ledger, 0);
  }
  auto pred = level_predicate(f, store, 1);
  while (ledger.quantum < budget) {
    const auto hit = grover_unknown_count(pred, rng, ledger, budget - ledger.quantum);
    if (!hit) break;
    ++ledger.classical;
    const std::uint32_t y = f(*hit);
    if (store.add(*hit, y) >= 2)
      return success_result(f, store.entries[store.by_image.at(y)], 2, ledger, 0);
  }
  return failure_result(ledger, 0);
}

namespace {

// Fresh recursive construction: every (k-1)-collision entry is built by an
// independent sub-run; nothing is shared between entries.
std::optional<Entry> hsx_find(const FunctionTable& f, std::uint32_t k, Rng& rng,
                              QueryLedger& ledger, std::uint64_t budget,
                              EntryStore& store) {
  const std::uint64_t n = f.codomain_size;
  if (k == 2) {
    // Inner BHT against the shared used-mask so recursive calls return
    // distinct points.
    const auto t = std::max<std::uint64_t>(
        1, static_cast<std::uint64_t>(std::llround(std::cbrt(static_cast<double>(n)))));
    std::vector<std::pair<std::uint64_t, std::uint32_t>> list;
    for (std::uint64_t i = 0; i < t; ++i) {
      std::uint64_t x;
      std::uint64_t tries = 0;
      do {
        x = rng.below(f.domain_size);
      } while (store.used[x] && ++tries < 64 * f.domain_size);
      if (store.used[x]) return std::nullopt;
      store.used[x] = 1;
      ++ledger.classical;
      const std::uint32_t y = f(x);
      for (const auto& [px, py] : list)
        if (py == y) return Entry{y, {px, x}};
      list.emplace_back(x, y);
    }
    PhasePredicate pred;
    pred.mask.assign(f.domain_size, 0);
    std::vector<std::uint8_t> image_ok(n, 0);
    for (const auto& [px, py] : list) image_ok[py] = 1;
    for (std::uint64_t x = 0; x < f.domain_size; ++x)
      pred.mask[x] = image_ok[f(x)] && !store.used[x];
    pred.recount();
    if (ledger.quantum >= budget) return std::nullopt;
    const auto hit = grover_unknown_count(pred, rng, ledger, budget - ledger.quantum);
    if (!hit) return std::nullopt;
    ++ledger.classical;
    store.used[*hit] = 1;
    const std::uint32_t y = f(*hit);
    for (const auto& [px, py] : list)
      if (py == y) return Entry{y, {px, *hit}};
    return std::nullopt;
  }

  const double t_exp = 1.0 / std::pow(3.0, k - 1);
  const auto t = std::max<std::uint64_t>(
      1, static_cast<std::uint64_t>(
             std::llround(std::pow(static_cast<double>(n), t_exp))));
  std::vector<Entry> list;
  while (list.size() < t) {
    if (ledger.quantum >= budget) return std::nullopt;
    auto sub = hsx_find(f, k - 1, rng, ledger, budget, store);
    if (!sub) return std::nullopt;
    bool merged = false;
    for (auto& e : list) {
      if (e.image == sub->image) {
        // Two sub-lists collided; the union is already a deeper collision.
        for (auto x : sub->preimages)
          if (std::find(e.preimages.begin(), e.preimages.end(), x) == e.preimages.end())
            e.preimages.push_back(x);
        if (e.arity() >= k) return e;
        merged = true;
        break;
      }
    }
    if (!merged) list.push_back(*sub);
  }
  PhasePredicate pred;
  pred.mask.assign(f.domain_size, 0);
  std::vector<std::uint8_t> image_ok(n, 0);
  for (const auto& e : list) image_ok[e.image] = 1;
  for (std::uint64_t x = 0; x < f.domain_size; ++x)
    pred.mask[x] = image_ok[f(x)] && !store.used[x];
  pred.recount();
  while (ledger.quantum < budget) {
    const auto hit = grover_unknown_count(pred, rng, ledger, budget - ledger.quantum);
    if (!hit) return std::nullopt;
    ++ledger.classical;
    store.used[*hit] = 1;
    const std::uint32_t y = f(*hit);
    for (auto& e : list) {
      if (e.image == y) {
        e.preimages.push_back(*hit);
        if (e.arity() >= k) return e;
        break;
      }
    }
    pred.mask[*hit] = 0;
    pred.recount();
  }
  return std::nullopt;
}

}  // namespace

FindResult find_multicollision_hsx(const FunctionTable& f_in, std::uint32_t k, Rng& rng,
                                   std::uint64_t budget) {
  if (k < 2) throw std::invalid_argument("find_multicollision_hsx: k must be >= 2");
  const std::uint64_t n = f_in.codomain_size;
  const FunctionTable f =
      f_in.domain_size > k * n && k * n >= 1 ? restrict_domain(f_in, k * n) : f_in;
  QueryLedger ledger;
  EntryStore store(f.domain_size);
  auto found = hsx_find(f, k, rng, ledger, budget, store);
  if (!found) return failure_result(ledger, 0);
  return success_result(f, *found, k, ledger, 0);
}

FindResult find_multicollision_classical(const FunctionTable& f, std::uint32_t k, Rng& rng) {
  if (k < 2) throw std::invalid_argument("find_multicollision_classical: k must be >= 2");
  QueryLedger ledger;
  std::unordered_map<std::uint32_t, std::vector<std::uint64_t>> buckets;
  std::uint64_t distinct = 0;
  while (distinct < f.domain_size) {
    const std::uint64_t x = rng.below(f.domain_size);
    ++ledger.classical;
    auto& bucket = buckets[f(x)];
    if (std::find(bucket.begin(), bucket.end(), x) != bucket.end()) continue;
    bucket.push_back(x);
    ++distinct;
    if (bucket.size() >= k)
      return success_result(f, Entry{f(x), bucket}, k, ledger, 0);
  }
  return failure_result(ledger, 0);  // the table holds no k-collision
}

std::string result_record_json(const std::string& algo, std::uint32_t k, double n_log2,
                               std::uint64_t seed, const FindResult& r, double budget_multiplier,
                               double wall_ms) {
  nlohmann::json j;
  j["algo"] = algo;
  j["k"] = k;
  j["n_log2"] = n_log2;
  j["seed"] = seed;
  j["success"] = r.success;
  j["quantum_queries"] = r.ledger.quantum;
  j["classical_queries"] = r.ledger.classical;
  j["budget_multiplier"] = budget_multiplier;
  j["wall_ms"] = wall_ms;
  return j.dump();
}

}  // namespace qmc
