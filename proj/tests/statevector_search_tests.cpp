#include <doctest.h>

#include <cmath>

#include "qmc/search.hpp"
#include "qmc/statevector.hpp"

using namespace qmc;

namespace {

PhasePredicate first_t_marked(std::size_t dim, std::size_t t) {
  PhasePredicate p;
  p.mask.assign(dim, 0);
  for (std::size_t i = 0; i < t; ++i) p.mask[i] = 1;
  p.recount();
  return p;
}

}  // namespace

TEST_CASE("uniform superposition amplitudes and norm") {
  CHECK(uniform_superposition(1).amp[0].real() == doctest::Approx(1.0));
  const auto s4 = uniform_superposition(4);
  for (auto a : s4.amp) CHECK(a.real() == doctest::Approx(0.5));
  CHECK(uniform_superposition(1 << 18).norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS(uniform_superposition(0));
}

TEST_CASE("phase oracle flips marked signs and books one query") {
  auto s = uniform_superposition(4);
  auto p = first_t_marked(4, 0);
  p.mask[3] = 1;
  p.recount();
  QueryLedger led;
  apply_phase_oracle(s, p, led);
  CHECK(s.amp[2].real() == doctest::Approx(0.5));
  CHECK(s.amp[3].real() == doctest::Approx(-0.5));
  CHECK(led.quantum == 1);

  // empty predicate: identity, still one query
  auto s2 = uniform_superposition(4);
  apply_phase_oracle(s2, first_t_marked(4, 0), led);
  CHECK(s2.amp[1].real() == doctest::Approx(0.5));
  CHECK(led.quantum == 2);

  // involution
  apply_phase_oracle(s, p, led);
  for (auto a : s.amp) CHECK(a.real() == doctest::Approx(0.5));
}

TEST_CASE("diffusion reflects about the mean") {
  auto u = uniform_superposition(8);
  apply_diffusion(u);
  for (auto a : u.amp) CHECK(a.real() == doctest::Approx(1.0 / std::sqrt(8.0)));

  StateVector s;
  s.amp = {{1, 0}, {0, 0}};
  apply_diffusion(s);
  CHECK(s.amp[0].real() == doctest::Approx(0.0));
  CHECK(s.amp[1].real() == doctest::Approx(1.0));

  // one full iteration at dim=4, t=1 is exact
  auto g = uniform_superposition(4);
  auto p = first_t_marked(4, 1);
  QueryLedger led;
  apply_phase_oracle(g, p, led);
  apply_diffusion(g);
  CHECK(std::norm(g.amp[0]) == doctest::Approx(1.0));
  CHECK(marked_probability(g, p) == doctest::Approx(1.0));
}

TEST_CASE("measurement matches amplitude weights") {
  StateVector point;
  point.amp = {{1, 0}, {0, 0}, {0, 0}};
  Rng rng(3);
  for (int i = 0; i < 50; ++i) CHECK(measure(point, rng) == 0);

  StateVector biased;
  biased.amp = {{0.6, 0}, {0.8, 0}};
  int ones = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) ones += measure(biased, rng) == 1;
  // p=0.64, sd = sqrt(p(1-p)/n) ~ 0.0015; allow 5 sd
  CHECK(std::abs(ones / static_cast<double>(draws) - 0.64) < 0.0076);

  StateVector broken;
  broken.amp = {{0.6, 0}, {0.6, 0}};
  CHECK_THROWS(measure(broken, rng));
}

TEST_CASE("uniform measurement is chi-square consistent") {
  const auto s = uniform_superposition(8);
  Rng rng(12);
  std::vector<int> counts(8, 0);
  const int draws = 80000;
  for (int i = 0; i < draws; ++i) ++counts[measure(s, rng)];
  double chi2 = 0;
  const double e = draws / 8.0;
  for (auto c : counts) chi2 += (c - e) * (c - e) / e;
  CHECK(chi2 < 30);  // dof 7, p ~ 1e-4 cutoff
}

TEST_CASE("iterated amplification follows the sine law") {
  for (std::size_t bits = 4; bits <= 10; bits += 2) {
    const std::size_t dim = 1ULL << bits;
    for (std::size_t t : {1, 2, 4, 8}) {
      const auto p = first_t_marked(dim, t);
      auto s = uniform_superposition(dim);
      QueryLedger led;
      const auto iters = static_cast<std::size_t>(std::floor(M_PI / 4 * std::sqrt(dim / double(t))));
      for (std::size_t q = 0; q <= iters; ++q) {
        CHECK(marked_probability(s, p) ==
              doctest::Approx(analytic_success(q, t, dim)).epsilon(1e-9));
        CHECK(analytic_success(q, t, dim) <= success_envelope(q, t, dim) + 1e-12);
        apply_phase_oracle(s, p, led);
        apply_diffusion(s);
      }
      CHECK(s.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("analytic success closed form") {
  CHECK(analytic_success(0, 3, 12) == doctest::Approx(0.25));
  CHECK(analytic_success(1, 1, 4) == doctest::Approx(1.0));
  CHECK_THROWS(analytic_success(1, 5, 4));
  CHECK(success_envelope(0, 1, 1024) ==
        doctest::Approx(M_PI * M_PI / 4.0 / 1024.0));
  CHECK(success_envelope(10, 4, 16) == doctest::Approx(1.0));
}

TEST_CASE("known-count driver frequency tracks the analytic law") {
  Rng rng(21);
  for (std::size_t bits : {6, 9, 12}) {
    const std::size_t dim = 1ULL << bits;
    for (std::size_t t : {1, 4}) {
      const auto p = first_t_marked(dim, t);
      const auto iters = static_cast<std::uint64_t>(std::floor(M_PI / 4 * std::sqrt(dim / double(t))));
      const double expect = analytic_success(iters, t, dim);
      int hits = 0;
      const int trials = 400;
      QueryLedger led;
      for (int i = 0; i < trials; ++i) {
        const auto before = led.quantum;
        if (grover_known_count(p, t, rng, led)) ++hits;
        CHECK(led.quantum - before == iters);
      }
      const double se = std::sqrt(expect * (1 - expect) / trials) + 1e-9;
      CHECK(std::abs(hits / double(trials) - expect) < 5 * se + 0.01);
    }
  }
}

TEST_CASE("unknown-count driver edge behavior") {
  Rng rng(31);
  QueryLedger led;
  // everything marked: first measurement succeeds
  auto all = first_t_marked(16, 16);
  const auto r = grover_unknown_count(all, rng, led, 100);
  REQUIRE(r.has_value());
  CHECK(led.quantum <= 1);

  // nothing marked: exact budget consumed, absent
  auto none = first_t_marked(64, 0);
  QueryLedger led2;
  CHECK_FALSE(grover_unknown_count(none, rng, led2, 40).has_value());
  CHECK(led2.quantum == 40);

  // returned points always verify
  auto p = first_t_marked(256, 3);
  for (int i = 0; i < 50; ++i) {
    QueryLedger l;
    const auto x = grover_unknown_count(p, rng, l, 2000);
    REQUIRE(x.has_value());
    CHECK(p.accepts(*x));
  }
}

TEST_CASE("unknown-count driver succeeds reliably within generous budget") {
  const std::size_t dim = 1 << 12;
  auto p = first_t_marked(dim, 1);
  int ok = 0;
  const int trials = 1000;
  for (int i = 0; i < trials; ++i) {
    Rng rng(child_seed(55, i));
    QueryLedger led;
    ok += grover_unknown_count(p, rng, led, static_cast<std::uint64_t>(20 * std::sqrt(dim)))
              .has_value();
  }
  CHECK(ok >= 990);
}
