#include "qmc/compressed/lemmas.hpp"

#include <cmath>
#include <stdexcept>

namespace qmc::co {

QueryLemmaReport verify_query_lemma(const AmplitudeTrace& trace, double tolerance,
                                    double unitary_tolerance) {
  if (trace.steps.empty()) throw std::invalid_argument("verify_query_lemma: empty trace");
  QueryLemmaReport report;
  report.worst_margin = 1e300;
  const double n = trace.n;
  double cumulative_bound = 0;
  for (std::size_t i = 1; i < trace.steps.size(); ++i) {
    const auto& prev = trace.steps[i - 1];
    const auto& cur = trace.steps[i];
    QueryLemmaStep s;
    s.step = static_cast<std::uint32_t>(i);
    s.is_query = cur.type == Step::Type::query;
    s.increment = cur.f[0] - prev.f[0];
    if (s.is_query) {
      s.increment_bound = std::sqrt(static_cast<double>(cur.query_index) / n) + tolerance;
      cumulative_bound += std::sqrt(static_cast<double>(cur.query_index) / n) + tolerance;
    } else {
      // Unitaries on the adversary registers cannot move database mass.
      s.increment_bound = unitary_tolerance;
    }
    s.increment_margin =
        s.increment_bound - (s.is_query ? s.increment : std::abs(s.increment));
    s.cumulative = cur.f[0];
    s.cumulative_bound = cumulative_bound;
    s.cumulative_margin = cumulative_bound - cur.f[0];
    if (s.increment_margin < 0 || (s.is_query && s.cumulative_margin < 0)) report.ok = false;
    report.worst_margin = std::min(report.worst_margin, s.increment_margin);
    if (s.is_query) report.worst_margin = std::min(report.worst_margin, s.cumulative_margin);
    report.steps.push_back(s);
  }
  return report;
}

Lemma5Report verify_lemma5(const AdversaryCircuit& circuit, const ClaimFn& claims,
                           std::uint32_t max_pairs, OracleMode mode, double tolerance) {
  Lemma5Report r;
  r.p = bruteforce_run(circuit, mode).claim_probability(claims);
  r.p_prime = compressed_run(circuit, mode).claim_probability(claims);
  const double slack = std::sqrt(static_cast<double>(max_pairs) / circuit.n);
  r.margin = std::sqrt(r.p_prime) + slack + tolerance - std::sqrt(r.p);
  r.ok = r.margin >= 0;
  return r;
}

}  // namespace qmc::co
