#pragma once

#include <cstdint>
#include <vector>

#include "qmc/compressed/simulate.hpp"

namespace qmc::co {

// Per-step check of how fast collision mass can grow along a trace:
//  - adversary unitaries leave the collision masses unchanged (within 1e-10);
//  - query number i raises the >=1-collision mass by at most sqrt(i)/sqrt(N);
//  - after query i the cumulative mass is at most sum_{l<=i} sqrt(l/N).
struct QueryLemmaStep {
  std::uint32_t step = 0;         // index into trace.steps (1-based, step 0 is initial)
  bool is_query = false;
  double increment = 0;           // f_1 delta over the previous step
  double increment_bound = 0;
  double increment_margin = 0;    // bound - increment (>= -tol when ok)
  double cumulative = 0;          // f_1 after this step
  double cumulative_bound = 0;
  double cumulative_margin = 0;
};

struct QueryLemmaReport {
  bool ok = true;
  double worst_margin = 0;
  std::vector<QueryLemmaStep> steps;
};

QueryLemmaReport verify_query_lemma(const AmplitudeTrace& trace, double tolerance = 1e-9,
                                    double unitary_tolerance = 1e-10);

// Compares the adversary's true success probability p (dense truth-table run)
// with the probability p' that the recorded database supports its claimed
// pairs, and checks sqrt(p) <= sqrt(p') + sqrt(k/N).
struct Lemma5Report {
  bool ok = true;
  double p = 0;
  double p_prime = 0;
  double margin = 0;  // sqrt(p') + sqrt(k/N) - sqrt(p)
};

Lemma5Report verify_lemma5(const AdversaryCircuit& circuit, const ClaimFn& claims,
                           std::uint32_t max_pairs, OracleMode mode = OracleMode::standard,
                           double tolerance = 1e-9);

}  // namespace qmc::co
