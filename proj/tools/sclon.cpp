// sclon: command-line driver for datasets, reference solves, training and
// evaluation. Every failure prints one line
//   error: code=E_... message
// and exits with the code's status.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <optional>

#include "sclon/error.hpp"
#include "sclon/io/array_file.hpp"
#include "sclon/io/checkpoint.hpp"
#include "sclon/io/config.hpp"
#include "sclon/io/csv.hpp"
#include "sclon/metrics/benchmark_run.hpp"
#include "sclon/residuals/residuals.hpp"
#include "sclon/solvers/solvers.hpp"
#include "sclon/train/trainer.hpp"
#include "store.hpp"

using namespace sclon;
using tool::fs::path;

namespace {

constexpr int kUsageStatus = 2;

struct Common {
  std::string config;
  std::string out;
  int threads = 0;
};

struct Loaded {
  io::RunConfig config;
  tool::RunPaths paths;
};

Loaded load(const Common& c) {
  Loaded l{io::load_config(c.config), {}};
  if (c.threads > 0) l.config.optimizer.threads = c.threads;
  l.paths.root = c.out.empty() ? path(l.config.output_dir) : path(c.out);
  return l;
}

std::vector<std::string> splits_of(const std::string& split) {
  if (split == "all") return {"train", "test"};
  return {split};
}

std::size_t split_size(const io::RunConfig& c, const std::string& split) {
  return split == "train" ? c.p_train : c.p_test;
}

int gen_inputs(const Common& common, const std::vector<std::string>& argv) {
  const auto l = load(common);
  for (const std::string split : {"train", "test"}) {
    const std::uint64_t first = split == "train" ? 0 : sampling::kTestIndexOffset;
    const auto inputs = sampling::generate_inputs(l.config.problem, l.config.sampling, first, split_size(l.config, split));
    tool::write_inputs(l.paths.data() / split, inputs, first);
    std::printf("%s: %zu samples -> %s\n", split.c_str(), inputs.size(), (l.paths.data() / split).c_str());
  }
  tool::fs::create_directories(l.paths.root);
  io::write_text(l.paths.root / "config.json", io::dump_config(l.config));
  tool::write_provenance(l.paths.root, "gen-inputs", l.config, argv);
  return 0;
}

int solve_ref(const Common& common, const std::string& split, const std::vector<std::string>& argv) {
  const auto l = load(common);
  for (const auto& s : splits_of(split)) {
    const auto inputs = tool::read_inputs(l.paths.data() / s, l.config.problem);
    std::vector<solvers::Trajectory> trajs;
    std::size_t warned = 0;
    for (const auto& in : inputs) {
      trajs.push_back(solvers::solve_reference(l.config.problem, in));
      if (!trajs.back().warnings.empty()) ++warned;
    }
    tool::write_trajectories(l.paths.refs() / (s + ".scln"), trajs);
    std::printf("%s: %zu trajectories (%zu with warnings)\n", s.c_str(), trajs.size(), warned);
  }
  tool::write_provenance(l.paths.root, "solve-ref", l.config, argv);
  return 0;
}

int residual_check(const Common& common, const std::string& split, double tolerance,
                   const std::vector<std::string>& argv) {
  const auto l = load(common);
  const auto residual = residuals::make_residual(l.config.problem);
  io::CsvTable table{{"split", "sample", "total", "scale", "relative"}, {}};
  double worst = 0;
  for (const auto& s : splits_of(split)) {
    const auto inputs = tool::read_inputs(l.paths.data() / s, l.config.problem);
    const auto trajs = tool::read_trajectories(l.paths.refs() / (s + ".scln"), l.config.problem);
    if (trajs.size() != inputs.size()) fail(ErrorCode::ConfigMismatch, "dataset and trajectories differ in size");
    for (std::size_t i = 0; i < trajs.size(); ++i) {
      const auto rep = residuals::evaluate_residual(*residual, trajs[i], inputs[i]);
      const double scale = residuals::trajectory_scale(trajs[i]);
      worst = std::max(worst, rep.total / scale);
      table.rows.push_back({s, std::to_string(i), io::format_double(rep.total), io::format_double(scale),
                            io::format_double(rep.total / scale)});
    }
  }
  io::write_text(l.paths.root / "residuals.csv", io::to_csv(table));
  tool::write_provenance(l.paths.root, "residual-check", l.config, argv);
  std::printf("worst relative residual %.3e (tolerance %.1e)\n", worst, tolerance);
  if (!(worst <= tolerance))
    fail(ErrorCode::ToleranceExceeded, "relative residual " + io::format_double(worst) + " exceeds tolerance");
  return 0;
}

// Highest segment_XXX directory, if any.
std::optional<int> latest_checkpoint(const path& root) {
  std::optional<int> best;
  if (!tool::fs::exists(root)) return best;
  for (const auto& e : tool::fs::directory_iterator(root)) {
    const auto name = e.path().filename().string();
    if (name.rfind("segment_", 0) != 0 || !tool::fs::exists(e.path() / "state.json")) continue;
    const int q = std::stoi(name.substr(8));
    if (!best || q > *best) best = q;
  }
  return best;
}

int train_cmd(const Common& common, bool resume, int stop_after, bool verbose, const std::vector<std::string>& argv) {
  auto l = load(common);
  const auto& p = l.config.problem;
  const auto hash = io::config_hash(l.config);
  const auto inputs = tool::read_inputs(l.paths.data() / "train", p);
  const net::Network network(l.config.network, p);
  const auto residual = residuals::make_residual(p);
  if (verbose)
    l.config.optimizer.progress = [](int q, int it, double loss) {
      std::fprintf(stderr, "segment %d iteration %d loss %.6e\n", q, it, loss);
    };

  train::TrainState st;
  const auto latest = resume ? latest_checkpoint(l.paths.checkpoints()) : std::nullopt;
  if (latest) {
    st = io::read_checkpoint(io::checkpoint_dir(l.paths.checkpoints(), *latest), hash);
    std::printf("resuming after segment %d\n", st.segment);
  } else {
    st = train::initial_train_state(p, network, inputs, l.config.init_seed);
  }
  tool::write_provenance(l.paths.root, "train", l.config, argv);
  tool::fs::create_directories(l.paths.loss());

  const int last = stop_after > 0 ? std::min(p.segments, st.segment + stop_after) : p.segments;
  while (st.segment < last) {
    st = train::train_segment(std::move(st), network, inputs, *residual, l.config.optimizer);
    const int q = st.segment - 1;
    const auto& h = st.loss_history.back();
    io::write_text(l.paths.loss() / ("segment_" + std::to_string(q) + ".csv"),
                   io::matrix_csv(h, h.size(), 1));
    io::write_checkpoint(io::checkpoint_dir(l.paths.checkpoints(), st.segment), st, hash);
    std::printf("segment %d: %zu iterations, loss %.6e -> %.6e (%s)\n", q, h.size() - 1, h.front(), h.back(),
                train::stop_reason_name(st.stop_reasons.back()));
    std::fflush(stdout);
  }
  return 0;
}

int eval_cmd(const Common& common, const std::string& reference_config, const std::vector<std::string>& argv) {
  const auto l = load(common);
  const auto& p = l.config.problem;
  const auto latest = latest_checkpoint(l.paths.checkpoints());
  if (!latest || *latest != p.segments)
    fail(ErrorCode::IoError, "no checkpoint covering all " + std::to_string(p.segments) + " segments in " +
                                 l.paths.checkpoints().string());
  const auto st = io::read_checkpoint(io::checkpoint_dir(l.paths.checkpoints(), *latest), io::config_hash(l.config));
  const auto reference = reference_config.empty() ? p : io::load_config(reference_config).problem;
  const net::Network network(l.config.network, p);
  const auto inputs = tool::read_inputs(l.paths.data() / "test", p);
  const auto result = metrics::benchmark_run(p, reference, network, st.segment_params, inputs);
  tool::fs::create_directories(l.paths.eval());
  io::write_text(l.paths.eval() / "benchmark.csv", metrics::benchmark_csv({result.row}));
  io::write_text(l.paths.eval() / "instances.csv", metrics::instance_csv(result.per_instance));
  tool::write_provenance(l.paths.root, "eval", l.config, argv);
  for (const auto& w : result.row.errors.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  std::printf("%s", metrics::benchmark_csv({result.row}).c_str());
  return 0;
}

int export_csv(const std::string& in, const std::string& out) {
  const auto a = io::read_array(in);
  // Leading dimensions become rows; complex elements split into re/im columns.
  const std::size_t per = a.kind == io::ElementKind::C128 ? 2 : 1;
  const std::size_t cols = a.dims.empty() ? 1 : a.dims.back() * per;
  const std::size_t rows = cols == 0 ? 0 : a.data.size() / cols;
  const auto text = io::matrix_csv(a.data, rows, cols);
  if (out.empty() || out == "-") std::cout << text;
  else {
    if (path(out).has_parent_path()) tool::fs::create_directories(path(out).parent_path());
    io::write_text(out, text);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  CLI::App app{"Spectral coefficient learning: datasets, reference solves, training and evaluation"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", common.config, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("-o,--out", common.out, "Run directory; defaults to paths.output_dir");
    sub->add_option("-j,--threads", common.threads, "Worker threads for loss evaluation")->check(CLI::PositiveNumber);
  };

  auto* gen = app.add_subcommand("gen-inputs", "Draw the training and test inputs");
  add_common(gen);

  std::string split = "all";
  auto* solve = app.add_subcommand("solve-ref", "Solve the reference scheme for a dataset");
  add_common(solve);
  solve->add_option("--split", split, "train, test or all")->check(CLI::IsMember({"train", "test", "all"}));

  double tolerance = 1e-16;
  auto* check = app.add_subcommand("residual-check", "Evaluate the residual loss on reference trajectories");
  add_common(check);
  check->add_option("--split", split, "train, test or all")->check(CLI::IsMember({"train", "test", "all"}));
  check->add_option("--tolerance", tolerance, "Largest accepted total / (1 + sum |alpha|^2)");

  bool resume = false, verbose = false;
  int stop_after = 0;
  auto* train = app.add_subcommand("train", "Train the segment networks");
  add_common(train);
  train->add_flag("--resume", resume, "Continue from the latest checkpoint");
  train->add_option("--segments", stop_after, "Train at most this many segments in this invocation");
  train->add_flag("-v,--verbose", verbose, "Print the loss of every iteration");

  std::string reference_config;
  auto* eval = app.add_subcommand("eval", "Score the trained networks on the test inputs");
  add_common(eval);
  eval->add_option("--reference-config", reference_config, "Score against this config's reference problem")
      ->check(CLI::ExistingFile);

  std::string in_file, out_file;
  auto* exp = app.add_subcommand("export-csv", "Convert an array file to CSV");
  exp->add_option("input", in_file, "Array file")->required();
  exp->add_option("output", out_file, "CSV file; stdout when omitted");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    std::fprintf(stderr, "error: code=E_USAGE %s\n", msg.c_str());
    return kUsageStatus;
  }

  try {
    if (*gen) return gen_inputs(common, args);
    if (*solve) return solve_ref(common, split, args);
    if (*check) return residual_check(common, split, tolerance, args);
    if (*train) return train_cmd(common, resume, stop_after, verbose, args);
    if (*eval) return eval_cmd(common, reference_config, args);
    if (*exp) return export_csv(in_file, out_file);
  } catch (const Error& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    std::fprintf(stderr, "error: code=%s %s\n", std::string(code_name(e.code())).c_str(), msg.c_str());
    return exit_status(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: code=E_INTERNAL %s\n", e.what());
    return 1;
  }
  return 0;
}
