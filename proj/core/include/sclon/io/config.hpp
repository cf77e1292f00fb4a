#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "sclon/net/network.hpp"
#include "sclon/sampling/dataset.hpp"
#include "sclon/solvers/problem.hpp"
#include "sclon/train/trainer.hpp"

namespace sclon::io {

struct RunConfig {
  solvers::PdeProblem problem;
  sampling::SamplingSpec sampling;
  int p_train = 50;
  int p_test = 20;
  net::NetworkSpec network;
  std::uint64_t init_seed = 1;
  train::TrainerOptions optimizer;
  std::string output_dir = "run";
};

/// Defaults of every block for a family.
RunConfig default_config(Family family);

/// Parses a JSON document. Only problem.family is required; omitted fields
/// keep the family defaults. Unknown keys, wrong types and configs that fail
/// validation throw ErrorCode::InvalidConfig.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// Fully resolved config as pretty JSON with sorted keys.
std::string dump_config(const RunConfig& config);

/// FNV-1a 64 over the compact canonical dump without the paths block and
/// the thread count.
std::uint64_t config_hash(const RunConfig& config);
std::string hash_hex(std::uint64_t hash);

const char* layer_kind_name(net::LayerKind kind);
const char* activation_name(net::Activation activation);

}  // namespace sclon::io
