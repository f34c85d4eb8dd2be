#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmc/bench.hpp"
#include "qmc/compressed/bounds.hpp"
#include "qmc/compressed/lemmas.hpp"
#include "qmc/compressed/simulate.hpp"
#include "qmc/multicollision.hpp"
#include "qmc/search.hpp"
#include "qmc/statevector.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 2;

int cmd_gen_function(std::uint64_t m, std::uint64_t n, const std::string& kind,
                     std::uint32_t k, std::uint64_t seed, const std::string& out) {
  qmc::FunctionTable f;
  if (kind == "random") {
    f = qmc::sample_random_function(m, n, seed);
  } else {
    f = qmc::build_k_to_1(k, n, seed);
    if (m != 0 && m != f.domain_size) f = qmc::restrict_domain(f, m);
  }
  const std::string text = qmc::serialize_table(f);
  if (out.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream(out) << text << "\n";
  }
  return kOk;
}

int cmd_find_collision(const std::string& algo, std::uint32_t k, std::uint32_t log_n,
                       std::uint64_t seed, double budget_mult) {
  const std::uint64_t n = 1ULL << log_n;
  qmc::Rng rng(qmc::child_seed(seed, 1));
  const auto f = qmc::build_k_to_1(k, n, qmc::child_seed(seed, 0));
  const auto t0 = std::chrono::steady_clock::now();
  qmc::FindResult r;
  if (algo == "paper") {
    r = qmc::find_multicollision_paper(f, k, rng, budget_mult);
  } else if (algo == "hsx") {
    const auto budget = static_cast<std::uint64_t>(
        std::ceil(budget_mult * k * std::pow(static_cast<double>(n), qmc::hsx_exponent(k))));
    r = qmc::find_multicollision_hsx(f, k, rng, budget);
  } else if (algo == "bht") {
    const auto budget = static_cast<std::uint64_t>(
        std::ceil(budget_mult * std::cbrt(static_cast<double>(n))));
    r = qmc::find_collision_bht(f, rng, budget);
  } else {
    r = qmc::find_multicollision_classical(f, k, rng);
  }
  const double wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  std::cout << qmc::result_record_json(algo, k, log_n, seed, r, budget_mult, wall_ms) << "\n";
  return r.success ? kOk : kCheckFailed;
}

int cmd_bench_exponent(const std::string& algo, std::uint32_t k, const std::string& range,
                       std::uint32_t trials, std::uint64_t seed, double budget_mult,
                       const std::string& out, std::uint32_t jobs, double slope_tol) {
  qmc::ExperimentConfig cfg;
  cfg.algorithm = algo;
  cfg.k = k;
  unsigned lo = 0, hi = 0, step = 1;
  if (std::sscanf(range.c_str(), "%u:%u:%u", &lo, &hi, &step) < 2)
    throw CLI::ValidationError("--log-n-range", "expected LO:HI[:STEP]");
  cfg.log_n_lo = lo;
  cfg.log_n_hi = hi;
  cfg.log_n_step = step;
  cfg.trials = trials;
  cfg.master_seed = seed;
  cfg.budget_multiplier = budget_mult;
  cfg.output_prefix = out;
  cfg.parallelism = jobs;
  const auto result = qmc::run_experiment(cfg);
  nlohmann::json j;
  j["target_exponent"] = result.target_exponent;
  j["fit_valid"] = result.fit.valid;
  j["slope"] = result.fit.slope;
  j["stderr_slope"] = result.fit.stderr_slope;
  for (const auto& a : result.aggregates)
    j["points"].push_back({{"log_n", a.log_n},
                           {"success_rate", a.success_rate},
                           {"median", a.median},
                           {"in_fit", a.in_fit}});
  std::cout << j.dump(2) << "\n";
  if (!result.fit.valid) return kCheckFailed;
  return std::abs(result.fit.slope - result.target_exponent) <= slope_tol ? kOk : kCheckFailed;
}

int cmd_verify_grover(std::uint32_t min_log_dim, std::uint32_t max_log_dim, double tol) {
  double worst = 0;
  for (std::uint32_t b = min_log_dim; b <= max_log_dim; ++b) {
    const std::size_t dim = 1ULL << b;
    for (std::uint64_t t : {1ULL, 2ULL, 4ULL, 8ULL}) {
      if (t > dim) continue;
      qmc::PhasePredicate pred;
      pred.mask.assign(dim, 0);
      for (std::uint64_t i = 0; i < t; ++i) pred.mask[i * (dim / t)] = 1;
      pred.recount();
      auto state = qmc::uniform_superposition(dim);
      qmc::QueryLedger ledger;
      const auto iters = static_cast<std::uint64_t>(
          std::floor(M_PI / 4 * std::sqrt(static_cast<double>(dim) / t)));
      for (std::uint64_t q = 0; q <= iters; ++q) {
        const double simulated = qmc::marked_probability(state, pred);
        const double analytic = qmc::analytic_success(q, t, dim);
        worst = std::max(worst, std::abs(simulated - analytic));
        qmc::apply_phase_oracle(state, pred, ledger);
        qmc::apply_diffusion(state);
      }
    }
  }
  std::cout << "worst deviation from sin^2((2q+1) asin(sqrt(t/dim))): " << worst << "\n";
  return worst <= tol ? kOk : kCheckFailed;
}

int cmd_compressed_equivalence(std::uint32_t max_m, std::uint32_t max_n, std::uint32_t max_q,
                               std::uint32_t circuits, std::uint64_t seed, double tol) {
  qmc::Rng rng(seed);
  double worst = 0;
  std::uint32_t tested = 0;
  for (std::uint32_t m = 2; m <= max_m; ++m)
    for (std::uint32_t n = 2; n <= max_n; ++n)
      for (std::uint32_t q = 1; q <= max_q; ++q)
        for (std::uint32_t c = 0; c < circuits; ++c) {
          const auto circuit = qmc::co::random_circuit(m, n, 2, q, rng);
          for (auto mode : {qmc::co::OracleMode::standard, qmc::co::OracleMode::phase}) {
            const auto dense = qmc::co::bruteforce_run(circuit, mode);
            const auto sparse = qmc::co::compressed_run(circuit, mode);
            worst = std::max(worst,
                             qmc::co::total_variation(dense.outcome, sparse.outcome));
            ++tested;
          }
        }
  std::cout << "runs: " << tested << "  worst total variation: " << worst << "\n";
  return worst <= tol ? kOk : kCheckFailed;
}

int cmd_compressed_trace(const std::string& path, const std::string& mode_name,
                         const std::string& out) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--circuit", "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto circuit = qmc::co::circuit_from_json(buf.str());
  const auto mode =
      mode_name == "phase" ? qmc::co::OracleMode::phase : qmc::co::OracleMode::standard;
  const auto result = qmc::co::compressed_run(circuit, mode);
  const auto report = qmc::co::verify_query_lemma(result.trace);

  std::ostringstream csv;
  csv << "step,kind,query_index,f1,f2,f3,g1,g2,f1_bound,f1_margin,norm_sq,pruned_mass\n";
  std::uint32_t queries = 0;
  for (std::size_t i = 0; i < result.trace.steps.size(); ++i) {
    const auto& s = result.trace.steps[i];
    const char* kind = i == 0                              ? "initial"
                       : s.type == qmc::co::Step::Type::query ? "query"
                                                              : "unitary";
    if (i > 0 && s.type == qmc::co::Step::Type::query) ++queries;
    const auto curve = qmc::co::bound_curves(2, queries, 1, circuit.n);
    const double bound = static_cast<double>(curve.f_bound);
    csv << i << ',' << kind << ',' << (i == 0 ? 0 : s.query_index) << ',' << s.f[0] << ','
        << s.f[1] << ',' << s.f[2] << ',' << s.g[0] << ',' << s.g[1] << ',' << bound << ','
        << bound - s.f[0] << ',' << s.norm_sq << ',' << s.pruned_mass << '\n';
  }
  if (out.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream(out) << csv.str();
  }
  std::cout << "query growth check: " << (report.ok ? "ok" : "VIOLATED")
            << "  worst margin: " << report.worst_margin << "\n";
  return report.ok ? kOk : kCheckFailed;
}

int cmd_bound_curves(std::uint32_t s, std::uint32_t log_n, std::uint32_t j) {
  const long double n = std::exp2(static_cast<long double>(log_n));
  const auto max_i = static_cast<std::uint64_t>(std::sqrt(n));
  std::cout << "i,f_bound,h,a_exact,a_estimate,g_bound,in_window\n";
  bool ok = true;
  for (std::uint64_t i = 0; i <= max_i; ++i) {
    const auto c = qmc::co::bound_curves(s, i, j, n);
    if (c.a_exact > c.a_estimate) ok = false;
    std::printf("%llu,%.12Le,%.12Le,%.12Le,%.12Le,%.12Le,%d\n",
                static_cast<unsigned long long>(i), c.f_bound, c.h, c.a_exact, c.a_estimate,
                c.g_bound, c.i_in_window && c.j_in_window ? 1 : 0);
  }
  const auto c1 = qmc::co::bound_curves(s, 1, j, n);
  std::cout << "# crossover i: " << c1.crossover << "  tail: ";
  std::printf("%.6Le\n", c1.tail);
  return ok ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-collision search and compressed-oracle lab"};
  app.require_subcommand(1);

  std::uint64_t m = 0, n = 16, seed = 1;
  std::uint32_t k = 2, log_n = 10, trials = 50, jobs = 1;
  std::uint32_t max_m = 4, max_n = 4, max_q = 3, circuits = 5;
  std::uint32_t s = 3, log_n_bits = 8, j_param = 1;
  std::uint32_t min_log_dim = 6, max_log_dim = 12;
  double budget_mult = 16.0, tol = 1e-9, slope_tol = 0.05;
  std::string kind = "k_to_1", algo = "paper", range = "9:13:1", out, circuit_path;
  std::string mode_name = "standard";

  auto* gen = app.add_subcommand("gen-function", "sample an oracle table and print it");
  gen->add_option("--m", m, "domain size (0: k*n for k_to_1)");
  gen->add_option("--n", n, "codomain size");
  gen->add_option("--kind", kind)->check(CLI::IsMember({"random", "k_to_1"}));
  gen->add_option("--k", k, "preimage arity for k_to_1");
  gen->add_option("--seed", seed);
  gen->add_option("--out", out, "output file (default stdout)");

  auto* find = app.add_subcommand("find-collision", "run one k-collision search");
  find->add_option("--algo", algo)->check(CLI::IsMember({"paper", "hsx", "bht", "classical"}));
  find->add_option("--k", k);
  find->add_option("--log-n", log_n, "codomain size 2^B");
  find->add_option("--seed", seed);
  find->add_option("--budget-mult", budget_mult);

  auto* bench = app.add_subcommand("bench-exponent", "sweep N and fit the query exponent");
  bench->add_option("--algo", algo)->check(CLI::IsMember({"paper", "hsx", "bht", "classical"}));
  bench->add_option("--k", k);
  bench->add_option("--log-n-range", range, "LO:HI:STEP over log2 N");
  bench->add_option("--trials", trials);
  bench->add_option("--seed", seed);
  bench->add_option("--budget-mult", budget_mult);
  bench->add_option("--out", out, "report file prefix");
  bench->add_option("--jobs", jobs);
  bench->add_option("--slope-tol", slope_tol);

  auto* grover = app.add_subcommand("verify-grover", "check the exact success law");
  grover->add_option("--min-log-dim", min_log_dim);
  grover->add_option("--max-log-dim", max_log_dim);
  grover->add_option("--tol", tol);

  auto* equiv = app.add_subcommand("compressed-equivalence",
                                   "compare dense and compressed oracle runs");
  equiv->add_option("--max-m", max_m);
  equiv->add_option("--max-n", max_n);
  equiv->add_option("--max-q", max_q);
  equiv->add_option("--circuits", circuits, "random circuits per (m,n,q) cell");
  equiv->add_option("--seed", seed);
  equiv->add_option("--tol", tol);

  auto* trace = app.add_subcommand("compressed-trace", "trace projection masses per step");
  trace->add_option("--circuit", circuit_path, "circuit JSON file")->required();
  trace->add_option("--mode", mode_name)->check(CLI::IsMember({"standard", "phase"}));
  trace->add_option("--out", out, "CSV output file (default stdout)");

  auto* curves = app.add_subcommand("bound-curves", "print reference curve values");
  curves->add_option("--s", s);
  curves->add_option("--log-n", log_n_bits);
  curves->add_option("--j", j_param);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;  // every usage problem maps to exit 1
  }

  try {
    if (gen->parsed()) return cmd_gen_function(m, n, kind, k, seed, out);
    if (find->parsed()) return cmd_find_collision(algo, k, log_n, seed, budget_mult);
    if (bench->parsed())
      return cmd_bench_exponent(algo, k, range, trials, seed, budget_mult, out, jobs, slope_tol);
    if (grover->parsed()) return cmd_verify_grover(min_log_dim, max_log_dim, tol);
    if (equiv->parsed())
      return cmd_compressed_equivalence(max_m, max_n, max_q, circuits, seed, tol);
    if (trace->parsed()) return cmd_compressed_trace(circuit_path, mode_name, out);
    if (curves->parsed()) return cmd_bound_curves(s, log_n_bits, j_param);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
