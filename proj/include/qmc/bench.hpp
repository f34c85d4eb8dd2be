#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qmc/multicollision.hpp"

namespace qmc {

struct ExperimentConfig {
  std::string algorithm = "paper";  // paper | hsx | bht | classical
  std::uint32_t k = 2;
  std::uint32_t log_n_lo = 9;
  std::uint32_t log_n_hi = 15;
  std::uint32_t log_n_step = 1;
  std::vector<std::uint32_t> log_n_list;  // when non-empty, overrides the range
  std::uint32_t trials = 100;
  double budget_multiplier = 16.0;
  std::uint64_t master_seed = 1;
  std::string output_prefix;  // empty: no files written
  std::uint32_t parallelism = 1;
};

std::string config_to_json(const ExperimentConfig& c);
ExperimentConfig config_from_json(const std::string& text);

struct TrialRecord {
  std::uint32_t log_n = 0;
  std::uint32_t trial = 0;
  std::uint64_t seed = 0;
  bool success = false;
  std::uint64_t quantum_queries = 0;
  std::uint64_t classical_queries = 0;
  double wall_ms = 0;  // informational only; never emitted to the raw CSV
};

struct PointAggregate {
  std::uint32_t log_n = 0;
  std::uint32_t trials = 0;
  double success_rate = 0;
  // Quartiles of total oracle queries (quantum + classical) over successful
  // trials.
  double median = 0, q1 = 0, q3 = 0;
  bool in_fit = false;  // success rate >= 0.5 with at least one success
};

struct FitResult {
  bool valid = false;  // requires >= 4 fitted points for experiment reports
  double slope = 0, intercept = 0, stderr_slope = 0;
};

struct ExperimentResult {
  ExperimentConfig config;
  double target_exponent = 0;
  std::vector<TrialRecord> records;      // sorted by (log_n, trial)
  std::vector<PointAggregate> aggregates;
  FitResult fit;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

// Ordinary least squares over (x, y) points; stderr_slope from residuals.
// `valid` here only requires >= 2 distinct abscissae.
FitResult fit_exponent(const std::vector<std::pair<double, double>>& points);

// Writes <prefix>_raw.csv, <prefix>_agg.csv, <prefix>_fit.json and
// <prefix>_plot.dat. Raw CSV excludes wall time so reruns are byte-identical.
void emit_report(const ExperimentResult& result, const std::string& prefix);

double target_exponent(const std::string& algorithm, std::uint32_t k);

}  // namespace qmc
