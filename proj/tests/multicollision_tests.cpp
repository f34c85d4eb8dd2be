#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "qmc/multicollision.hpp"

using namespace qmc;

TEST_CASE("level schedule closed form") {
  const auto s = level_schedule(3, 1ULL << 14);
  REQUIRE(s.sizes.size() == 3);
  CHECK(s.sizes[0] == 64);  // exponent 3/7 of 2^14
  CHECK(s.sizes[1] == 4);   // exponent 1/7
  CHECK(s.sizes[2] == 1);

  for (std::uint32_t k = 2; k <= 5; ++k) {
    const auto sch = level_schedule(k, 4096);
    CHECK(sch.sizes.back() == 1);
    for (std::size_t i = 1; i < sch.sizes.size(); ++i)
      CHECK(sch.sizes[i - 1] >= sch.sizes[i]);
  }
  CHECK_THROWS(level_schedule(1, 16));
}

TEST_CASE("target exponents") {
  CHECK(multicollision_exponent(2) == doctest::Approx(1.0 / 3.0));
  CHECK(multicollision_exponent(3) == doctest::Approx(3.0 / 7.0));
  CHECK(multicollision_exponent(4) == doctest::Approx(7.0 / 15.0));
  CHECK(hsx_exponent(2) == doctest::Approx(1.0 / 3.0));
  CHECK(hsx_exponent(3) == doctest::Approx(4.0 / 9.0));
}

TEST_CASE("shared-list finder returns verified collisions") {
  for (std::uint32_t k : {2u, 3u}) {
    int wins = 0;
    for (int trial = 0; trial < 20; ++trial) {
      const auto f = build_k_to_1(k, 1 << 12, child_seed(100 + k, trial));
      Rng rng(child_seed(200 + k, trial));
      const auto r = find_multicollision_paper(f, k, rng, 16.0);
      if (!r.success) continue;
      ++wins;
      CHECK(r.record.arity == k);
      QueryLedger led;
      CHECK(verify_k_collision(f, r.record.preimages, led));
    }
    CHECK(wins >= 14);  // success probability well above 2/3
  }
}

TEST_CASE("shared-list finder on impossible instance exhausts its budget") {
  const auto injective = build_k_to_1(1, 256, 9);
  Rng rng(3);
  const auto r = find_multicollision_paper(injective, 2, rng, 4.0);
  CHECK_FALSE(r.success);
  const auto budget = static_cast<std::uint64_t>(
      std::ceil(4.0 * 2 * std::pow(256.0, 1.0 / 3.0)));
  CHECK(r.ledger.quantum >= budget);
}

TEST_CASE("shared-list finder restricts oversized domains") {
  auto f = sample_random_function(8 * 64, 64, 4);  // M far above k*N
  Rng rng(5);
  const auto r = find_multicollision_paper(f, 2, rng, 16.0);
  if (r.success)
    for (auto x : r.record.preimages) CHECK(x < 2 * 64);
}

TEST_CASE("list-then-search collision finder") {
  // collision already inside the initial list: zero quantum queries
  FunctionTable f;
  f.domain_size = 8;
  f.codomain_size = 8;  // t = 2 samples
  f.table = {3, 3, 3, 3, 3, 3, 3, 3};
  Rng rng(1);
  const auto r = find_collision_bht(f, rng, 100);
  REQUIRE(r.success);
  CHECK(r.ledger.quantum == 0);

  int wins = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = build_k_to_1(2, 1 << 12, child_seed(300, trial));
    Rng r2(child_seed(301, trial));
    const auto budget = static_cast<std::uint64_t>(8 * std::cbrt(1 << 12));
    const auto res = find_collision_bht(g, r2, budget);
    if (res.success) {
      ++wins;
      QueryLedger led;
      CHECK(verify_k_collision(g, res.record.preimages, led));
      CHECK(res.ledger.quantum <= budget);
    }
  }
  CHECK(wins >= 90);
}

TEST_CASE("fresh-sublist finder") {
  // k=2 path behaves like the plain list-then-search finder
  int wins = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = build_k_to_1(2, 1 << 10, child_seed(400, trial));
    Rng rng(child_seed(401, trial));
    const auto r = find_multicollision_hsx(f, 2, rng, 500);
    if (r.success) {
      ++wins;
      QueryLedger led;
      CHECK(verify_k_collision(f, r.record.preimages, led));
    }
  }
  CHECK(wins >= 25);

  // k=3 within the scaled budget
  wins = 0;
  const std::uint64_t n = 1 << 12;
  const auto budget = static_cast<std::uint64_t>(
      std::ceil(16 * 3 * std::pow(static_cast<double>(n), 4.0 / 9.0)));
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = build_k_to_1(3, n, child_seed(500, trial));
    Rng rng(child_seed(501, trial));
    const auto r = find_multicollision_hsx(f, 3, rng, budget);
    if (r.success) {
      ++wins;
      CHECK(r.record.arity == 3);
      QueryLedger led;
      CHECK(verify_k_collision(f, r.record.preimages, led));
    }
  }
  CHECK(wins >= 14);
}

TEST_CASE("classical birthday search") {
  FunctionTable twin;
  twin.domain_size = 2;
  twin.codomain_size = 8;
  twin.table = {7, 7};
  Rng rng(8);
  const auto r = find_multicollision_classical(twin, 2, rng);
  REQUIRE(r.success);
  CHECK(r.ledger.classical >= 2);  // sampling is with replacement
  CHECK(r.record.preimages.size() == 2);

  // no 3-collision exists: terminates with failure
  FunctionTable flat;
  flat.domain_size = 4;
  flat.codomain_size = 2;
  flat.table = {0, 0, 1, 1};
  const auto rf = find_multicollision_classical(flat, 3, rng);
  CHECK_FALSE(rf.success);

  // median cost tracks the birthday bound sqrt(pi/2 N)
  std::vector<double> costs;
  const std::uint64_t n = 1 << 16;
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = sample_random_function(2 * n, n, child_seed(600, trial));
    Rng r2(child_seed(601, trial));
    const auto res = find_multicollision_classical(f, 2, r2);
    REQUIRE(res.success);
    costs.push_back(static_cast<double>(res.ledger.classical));
  }
  std::sort(costs.begin(), costs.end());
  const double median = costs[costs.size() / 2];
  const double birthday = std::sqrt(M_PI / 2 * static_cast<double>(n));
  CHECK(median >= 0.5 * birthday);
  CHECK(median <= 3.0 * birthday);
}

TEST_CASE("result record schema") {
  FindResult r;
  r.success = true;
  r.ledger.quantum = 12;
  r.ledger.classical = 30;
  const auto j = nlohmann::json::parse(result_record_json("paper", 3, 14.0, 77, r, 8.0, 1.5));
  CHECK(j.at("algo") == "paper");
  CHECK(j.at("k") == 3);
  CHECK(j.at("n_log2") == 14.0);
  CHECK(j.at("seed") == 77);
  CHECK(j.at("success") == true);
  CHECK(j.at("quantum_queries") == 12);
  CHECK(j.at("classical_queries") == 30);
  CHECK(j.at("budget_multiplier") == 8.0);
  CHECK(j.count("wall_ms") == 1);
}
