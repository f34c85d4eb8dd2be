#include <doctest.h>

#include <cmath>

#include "qmc/compressed/circuit.hpp"
#include "qmc/compressed/lemmas.hpp"
#include "qmc/compressed/simulate.hpp"

using namespace qmc::co;

namespace {

// QFT on the response register as an explicit adversary unitary.
Step qft_u_step(std::uint32_t m, std::uint32_t n, std::uint32_t z, int sign) {
  Step s;
  s.type = Step::Type::unitary;
  const std::uint32_t dim = m * n * z;
  s.matrix.assign(dim, std::vector<cplx>(dim, cplx(0, 0)));
  for (std::uint32_t a = 0; a < dim; ++a) {
    const std::uint32_t x = a / (n * z), u = (a / z) % n, zz = a % z;
    for (std::uint32_t u2 = 0; u2 < n; ++u2) {
      const double ang = sign * 2.0 * M_PI * (u * u2 % n) / n;
      s.matrix[(x * n + u2) * z + zz][a] =
          cplx(std::cos(ang), std::sin(ang)) / std::sqrt(static_cast<double>(n));
    }
  }
  return s;
}

}  // namespace

TEST_CASE("circuit construction and serialization") {
  qmc::Rng rng(77);
  const auto u = random_unitary(6, rng);
  CHECK(unitarity_defect(u) < 1e-10);

  auto c = random_circuit(3, 2, 1, 2, rng);
  CHECK(c.query_count() == 2);
  CHECK(c.steps.size() == 5);  // unitary, query, unitary, query, unitary

  const auto round = circuit_from_json(circuit_to_json(c));
  CHECK(round.m == c.m);
  CHECK(round.steps.size() == c.steps.size());
  const auto r1 = compressed_run(c);
  const auto r2 = compressed_run(round);
  CHECK(total_variation(r1.outcome, r2.outcome) < 1e-12);

  auto bad = circuit_to_json(c);
  // corrupt one matrix entry hard enough to break unitarity
  const auto pos = bad.find("matrix");
  REQUIRE(pos != std::string::npos);
  bad.replace(bad.find("[[", pos), 3, "[[9");
  CHECK_THROWS(circuit_from_json(bad));
}

TEST_CASE("dense run basics") {
  AdversaryCircuit empty;
  empty.m = 2;
  empty.n = 3;
  empty.z = 1;
  const auto r = bruteforce_run(empty);
  CHECK(r.outcome[0] == doctest::Approx(1.0));  // untouched initial state

  // one query averaged over all functions: response marginal is uniform
  const auto probe = classical_probe_circuit(2, 2, 1);
  const auto q = bruteforce_run(probe, OracleMode::standard);
  double resp[2] = {0, 0};
  for (std::uint32_t x = 0; x < 2; ++x)
    for (std::uint32_t u = 0; u < 2; ++u) resp[u] += q.outcome[x * 2 + u];
  CHECK(resp[0] == doctest::Approx(0.5));
  CHECK(resp[1] == doctest::Approx(0.5));

  CHECK_THROWS(bruteforce_run(classical_probe_circuit(8, 8, 1)));  // guard: 8^8 tables
}

TEST_CASE("response conjugation turns one oracle model into the other") {
  qmc::Rng rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    auto c = random_circuit(2, 3, 1, 2, rng);
    AdversaryCircuit wrapped = c;
    wrapped.steps.clear();
    for (const auto& s : c.steps) {
      if (s.type == Step::Type::query) {
        wrapped.steps.push_back(qft_u_step(c.m, c.n, c.z, +1));
        wrapped.steps.push_back(Step{});
        wrapped.steps.push_back(qft_u_step(c.m, c.n, c.z, -1));
      } else {
        wrapped.steps.push_back(s);
      }
    }
    const auto direct = bruteforce_run(c, OracleMode::standard);
    const auto conj = bruteforce_run(wrapped, OracleMode::phase);
    CHECK(total_variation(direct.outcome, conj.outcome) < 1e-12);
  }
}

TEST_CASE("sparse and dense simulations agree across all representations") {
  qmc::Rng rng(99);
  for (int trial = 0; trial < 12; ++trial) {
    const std::uint32_t m = 2 + rng.below(3), n = 2 + rng.below(3), q = 1 + rng.below(3);
    const auto c = random_circuit(m, n, 2, q, rng);
    for (auto mode : {OracleMode::standard, OracleMode::phase}) {
      const auto dense = bruteforce_run(c, mode);
      const auto sparse = compressed_run(c, mode);
      const auto digits = compressed_fourier_run(c, mode);
      CHECK(total_variation(dense.outcome, sparse.outcome) < 1e-9);
      CHECK(total_variation(dense.outcome, digits.outcome) < 1e-9);

      // amplitude-level match after changing representation
      const auto converted = to_phase_representation(digits.final_state);
      double diff = 0;
      for (const auto& [key, amp] : converted.amps) {
        const auto it = sparse.final_state.amps.find(key);
        diff += std::norm(amp - (it == sparse.final_state.amps.end() ? cplx(0, 0) : it->second));
      }
      CHECK(diff < 1e-18);
    }
  }
}

TEST_CASE("database update rule over the additive group") {
  CHECK(fourier_db_update({}, 0, 5, 8) == Database{{0, 5}});
  CHECK(fourier_db_update({{0, 1}}, 0, 1, 2).empty());
  CHECK(fourier_db_update({{1, 3}}, 1, 2, 8) == Database{{1, 5}});
  CHECK(fourier_db_update({{2, 1}}, 0, 0, 4) == Database{{2, 1}});  // u = 0 no-op

  // adding u then N-u is the identity: exhaustive at N <= 4, |D| <= 3
  for (std::uint32_t n = 2; n <= 4; ++n) {
    std::vector<Database> dbs{{}};
    for (std::uint8_t x = 0; x < 3; ++x)
      for (std::uint8_t v = 1; v < n; ++v) {
        const auto snapshot = dbs;
        for (auto d : snapshot) {
          if (!d.empty() && d.back().first >= x) continue;
          d.emplace_back(x, v);
          dbs.push_back(d);
        }
      }
    for (const auto& d : dbs)
      for (std::uint32_t x = 0; x < 4; ++x)
        for (std::uint32_t u = 0; u < n; ++u)
          CHECK(fourier_db_update(fourier_db_update(d, x, u, n), x, (n - u) % n, n) == d);
  }
}

TEST_CASE("collision counting convention") {
  const auto pair = encode_key(0, 0, 0, {{0, 7}, {1, 7}});
  CHECK(collision_count(pair, 2) == 1);
  CHECK(collision_count(pair, 3) == 0);
  const auto distinct = encode_key(0, 0, 0, {{0, 1}, {1, 2}});
  CHECK(collision_count(distinct, 2) == 0);
  // a triple counts once at every arity up to three
  const auto triple = encode_key(0, 0, 0, {{0, 7}, {1, 7}, {2, 7}});
  CHECK(collision_count(triple, 2) == 1);
  CHECK(collision_count(triple, 3) == 1);
  CHECK(database_size(triple) == 3);
}

TEST_CASE("projection masses") {
  JointState s;
  s.m = s.n = 4;
  s.z = 1;
  s.amps[encode_key(0, 0, 0, {{0, 1}, {1, 1}})] = cplx(1, 0);
  CHECK(projection_mass(s, {.s = 2, .min_count = 1}) == doctest::Approx(1.0));

  JointState t;
  t.m = t.n = 4;
  t.z = 1;
  t.amps[encode_key(0, 0, 0, {{0, 1}, {1, 2}})] = cplx(1, 0);
  CHECK(projection_mass(t, {.s = 2, .min_count = 1}) == doctest::Approx(0.0));

  // exactly-j + at-least-k slicing
  JointState u;
  u.m = u.n = 8;
  u.z = 1;
  u.amps[encode_key(0, 0, 0, {{0, 7}, {1, 7}, {2, 7}})] = cplx(1, 0);
  CHECK(projection_mass(u, {.s = 3, .min_count = 1, .exact_two_collisions = true, .exact_j = 1}) ==
        doctest::Approx(1.0));
  CHECK(projection_mass(u, {.s = 3, .min_count = 1, .exact_two_collisions = true, .exact_j = 0}) ==
        doctest::Approx(0.0));
}

TEST_CASE("sparse run invariants: support, norm, trace shape") {
  qmc::Rng rng(17);
  const auto c = random_circuit(3, 3, 1, 3, rng);
  const auto r = compressed_run(c);
  double norm = 0;
  for (const auto& [key, amp] : r.final_state.amps) {
    CHECK(database_size(key) <= 3);  // never more entries than queries
    norm += std::norm(amp);
  }
  CHECK(norm + r.final_state.pruned_mass == doctest::Approx(1.0).epsilon(1e-12));

  REQUIRE(r.trace.steps.size() == c.steps.size() + 1);
  for (const auto& step : r.trace.steps) {
    CHECK(step.f[0] >= step.f[1]);
    CHECK(step.f[1] >= step.f[2]);
    CHECK(step.g[0] >= step.g[1]);
    for (double v : step.f) {
      CHECK(v >= 0);
      CHECK(v <= 1 + 1e-12);
    }
  }
  // initial state: no database, all masses zero
  CHECK(r.trace.steps[0].f[0] == 0);

  // one classical query cannot produce a collision
  const auto probe = compressed_run(classical_probe_circuit(2, 4, 1));
  CHECK(probe.trace.steps.back().f[0] == doctest::Approx(0.0));
  for (const auto& [key, amp] : probe.final_state.amps) CHECK(database_size(key) <= 1);
}

TEST_CASE("mass growth along a trace obeys the per-query limit") {
  qmc::Rng rng(23);
  for (int trial = 0; trial < 6; ++trial) {
    const auto c = random_circuit(3, 3, 1, 1 + rng.below(3), rng);
    for (auto mode : {OracleMode::standard, OracleMode::phase}) {
      const auto report = verify_query_lemma(compressed_run(c, mode).trace);
      CHECK(report.ok);
      CHECK(report.worst_margin >= -1e-9);
      // unitary steps never move database mass
      for (const auto& s : report.steps)
        if (!s.is_query) CHECK(std::abs(s.increment) <= 1e-10);
    }
  }
}

TEST_CASE("claimed pairs: recorded support vs true success probability") {
  // output a constant, never query: true probability 1/N, support 0
  AdversaryCircuit idle;
  idle.m = 4;
  idle.n = 4;
  idle.z = 1;
  const ClaimFn fixed = [](std::uint32_t, std::uint32_t, std::uint32_t) {
    return std::vector<ClaimPair>{{2, 3}};
  };
  const auto quiet = verify_lemma5(idle, fixed, 1);
  CHECK(quiet.p == doctest::Approx(0.25));
  CHECK(quiet.p_prime == doctest::Approx(0.0));
  CHECK(quiet.ok);

  // query then report the answer: true probability 1, recorded support (1-1/N)^2
  const auto probe = classical_probe_circuit(2, 4, 1);
  const ClaimFn echo = [](std::uint32_t, std::uint32_t u, std::uint32_t) {
    return std::vector<ClaimPair>{{0, u}};
  };
  const auto loud = verify_lemma5(probe, echo, 1);
  CHECK(loud.p == doctest::Approx(1.0));
  CHECK(loud.p_prime == doctest::Approx(9.0 / 16.0));
  CHECK(loud.ok);

  qmc::Rng rng(31);
  for (int trial = 0; trial < 8; ++trial) {
    const std::uint32_t m = 2 + rng.below(3), n = 2 + rng.below(3);
    const auto c = random_circuit(m, n, 2, 1 + rng.below(3), rng);
    const std::uint32_t mm = m;
    const ClaimFn claim = [mm](std::uint32_t x, std::uint32_t u, std::uint32_t) {
      return std::vector<ClaimPair>{{x % mm, u}};
    };
    CHECK(verify_lemma5(c, claim, 1).ok);
  }
}

TEST_CASE("sparse runs are deterministic") {
  qmc::Rng r1(41), r2(41);
  const auto c1 = random_circuit(3, 2, 2, 2, r1);
  const auto c2 = random_circuit(3, 2, 2, 2, r2);
  const auto a = compressed_run(c1);
  const auto b = compressed_run(c2);
  REQUIRE(a.outcome.size() == b.outcome.size());
  for (std::size_t i = 0; i < a.outcome.size(); ++i) CHECK(a.outcome[i] == b.outcome[i]);
}
