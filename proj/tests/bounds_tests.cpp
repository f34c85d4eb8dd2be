#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include "qmc/compressed/bounds.hpp"

using namespace qmc::co;

TEST_CASE("reference curve closed forms") {
  const auto b = bound_curves(2, 1, 1, 64);
  CHECK(static_cast<double>(b.f_bound) == doctest::Approx(std::exp(1.0) / 8.0).epsilon(1e-12));

  // s=3 power branch is 2e i^{3/2}/sqrt(N); flat branch is 10 N^{1/8}
  const long double n = 256;
  const auto c = bound_curves(3, 4, 1, n);
  CHECK(static_cast<double>(c.h) ==
        doctest::Approx(std::max(2 * std::exp(1.0) * 8.0 / 16.0, 10 * std::pow(256.0, 0.125))));
  CHECK(static_cast<double>(c.tail) == doctest::Approx(std::exp2(-std::pow(256.0, 0.125))));
}

TEST_CASE("branch crossover is the first index won by the power term") {
  for (std::uint32_t s : {3u, 4u}) {
    for (long double n : {256.0L, 4096.0L}) {
      const auto c = bound_curves(s, 1, 1, n);
      REQUIRE(c.crossover > 0);
      const long double flat = 10.0L * std::pow(n, std::exp2(-static_cast<long double>(s)));
      CHECK(h_curve(s, static_cast<long double>(c.crossover) - 1, n) == flat);
      CHECK(h_curve(s, static_cast<long double>(c.crossover), n) > flat);
    }
  }
}

TEST_CASE("running sum never exceeds its closed-form estimate") {
  for (std::uint32_t s : {3u, 4u, 5u}) {
    for (long double n : {256.0L, 4096.0L}) {
      const auto max_i = static_cast<std::uint64_t>(std::sqrt(n));
      long double prev = -1;
      for (std::uint64_t i = 0; i <= max_i; ++i) {
        const auto c = bound_curves(s, i, 2, n);
        CHECK(c.a_exact <= c.a_estimate);
        CHECK(c.a_exact >= prev);  // monotone in i
        prev = c.a_exact;
        CHECK(c.i_in_window);
      }
      CHECK_FALSE(bound_curves(s, max_i + 1, 2, n).i_in_window);
    }
  }
}

TEST_CASE("validity window flags and argument checks") {
  CHECK(bound_curves(3, 4, 2, 256).j_in_window);  // N^{1/8} = 2
  CHECK_FALSE(bound_curves(3, 4, 3, 256).j_in_window);
  CHECK_THROWS(bound_curves(1, 1, 1, 64));
  CHECK_THROWS(bound_curves(3, 1, 1, 1));
}

TEST_CASE("aggregate bound combines the power of the sum with the tail") {
  const auto c = bound_curves(3, 16, 3, 4096);
  const long double expect =
      c.a_exact * c.a_exact * c.a_exact / 6.0L + c.tail;
  CHECK(static_cast<double>(c.g_bound) == doctest::Approx(static_cast<double>(expect)));
}
