#include "sclon/metrics/benchmark_run.hpp"

#include "sclon/error.hpp"
#include "sclon/io/csv.hpp"
#include "sclon/solvers/solvers.hpp"
#include "sclon/train/trainer.hpp"

namespace sclon::metrics {

std::string equation_label(Family family) {
  switch (family) {
    case Family::DiffusionReaction:
      return "Diffusion reaction";
    case Family::Burgers:
      return "Burgers";
    case Family::Advection:
      return "Advection";
    case Family::ConvectionDiffusionBL:
      return "Convection diffusion with a boundary layer";
    case Family::KSE2D:
      return "2D Kuramoto Sivashinsky";
    case Family::NSE2D:
      return "2D Navier-Stokes";
  }
  return "";
}

std::string input_label(Family family) {
  switch (family) {
    case Family::DiffusionReaction:
      return "Forcing functions";
    case Family::Advection:
      return "Variable coefficients";
    default:
      return "Initial conditions";
  }
}

BenchmarkResult benchmark_run(const solvers::PdeProblem& problem, const solvers::PdeProblem& reference_problem,
                              const net::Network& network, const std::vector<std::vector<double>>& segment_params,
                              const std::vector<sampling::InputSample>& test_inputs) {
  require(!test_inputs.empty(), "benchmark_run: no test inputs");
  require(static_cast<int>(segment_params.size()) == problem.segments, "benchmark_run: need one network per segment");
  require(reference_problem.family == problem.family && reference_problem.total_steps() == problem.total_steps(),
          "benchmark_run: reference problem must share family and horizon");
  std::vector<std::vector<std::vector<double>>> preds, refs;
  BenchmarkResult result;
  for (const auto& input : test_inputs) {
    const auto ref = solvers::solve_reference(reference_problem, input);
    const auto pred = train::predict_trajectory(problem, network, segment_params, input);
    refs.push_back(reconstruct(reference_problem, ref));
    preds.push_back(reconstruct(problem, pred));
    result.per_instance.push_back(error_triple(stack({preds.back()}), stack({refs.back()})));
  }
  result.row.equation = equation_label(problem.family);
  result.row.random_input = input_label(problem.family);
  result.row.errors = error_triple(stack(preds), stack(refs));
  return result;
}

std::string benchmark_csv(const std::vector<BenchmarkRow>& rows) {
  io::CsvTable table{{"equation", "random_input", "mae", "rel_l2", "l_inf"}, {}};
  for (const auto& r : rows)
    table.rows.push_back({r.equation, r.random_input, io::format_double(r.errors.mae),
                          io::format_double(r.errors.rel_l2), io::format_double(r.errors.l_inf)});
  return io::to_csv(table);
}

std::string instance_csv(const std::vector<ErrorTriple>& instances) {
  io::CsvTable table{{"instance", "mae", "rel_l2", "l_inf"}, {}};
  for (std::size_t i = 0; i < instances.size(); ++i)
    table.rows.push_back({std::to_string(i), io::format_double(instances[i].mae),
                          io::format_double(instances[i].rel_l2), io::format_double(instances[i].l_inf)});
  return io::to_csv(table);
}

}  // namespace sclon::metrics
