#pragma once

#include <string>
#include <vector>

#include "sclon/metrics/metrics.hpp"
#include "sclon/net/network.hpp"
#include "sclon/sampling/inputs.hpp"

namespace sclon::metrics {

struct BenchmarkRow {
  std::string equation;
  std::string random_input;
  ErrorTriple errors;
};

struct BenchmarkResult {
  /// Errors averaged over all test samples (the table row).
  BenchmarkRow row;
  /// The same three metrics for each test sample alone.
  std::vector<ErrorTriple> per_instance;
};

/// Display names used in result tables.
std::string equation_label(Family family);
std::string input_label(Family family);

/// Solves `reference_problem` for every test input, predicts with the trained
/// segment networks over the whole horizon and compares steps 1..QR on the
/// evaluation grid. `reference_problem` normally equals `problem`; they differ
/// only for ablations such as a CDE network without the corrector measured
/// against the enriched reference.
BenchmarkResult benchmark_run(const solvers::PdeProblem& problem, const solvers::PdeProblem& reference_problem,
                              const net::Network& network, const std::vector<std::vector<double>>& segment_params,
                              const std::vector<sampling::InputSample>& test_inputs);

/// Header: equation,random_input,mae,rel_l2,l_inf
std::string benchmark_csv(const std::vector<BenchmarkRow>& rows);
/// Header: instance,mae,rel_l2,l_inf
std::string instance_csv(const std::vector<ErrorTriple>& instances);

}  // namespace sclon::metrics
