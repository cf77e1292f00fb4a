#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sclon/io/config.hpp"
#include "sclon/sampling/inputs.hpp"
#include "sclon/solvers/trajectory.hpp"

namespace sclon::tool {

namespace fs = std::filesystem;

/// Layout of one run directory.
struct RunPaths {
  fs::path root;

  fs::path data() const { return root / "data"; }
  fs::path refs() const { return root / "refs"; }
  fs::path checkpoints() const { return root / "checkpoints"; }
  fs::path loss() const { return root / "loss"; }
  fs::path eval() const { return root / "eval"; }
};

/// Samples of one split: values.scln (P x width), raw.scln when the sampler
/// keeps a raw draw, and manifest.json with the metadata.
void write_inputs(const fs::path& dir, const std::vector<sampling::InputSample>& inputs, std::uint64_t first_index);
std::vector<sampling::InputSample> read_inputs(const fs::path& dir, const solvers::PdeProblem& problem);

/// Trajectories of one split as a rank-3 array (P, K + 1, width); Fourier
/// spectra are stored as complex elements.
void write_trajectories(const fs::path& file, const std::vector<solvers::Trajectory>& trajectories);
std::vector<solvers::Trajectory> read_trajectories(const fs::path& file, const solvers::PdeProblem& problem);

solvers::Representation representation_of(const solvers::PdeProblem& problem);

/// provenance_<command>.json next to the outputs.
void write_provenance(const fs::path& root, const std::string& command, const io::RunConfig& config,
                      const std::vector<std::string>& argv);

}  // namespace sclon::tool
