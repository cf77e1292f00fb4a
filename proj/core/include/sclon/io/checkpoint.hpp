#pragma once

#include <cstdint>
#include <filesystem>

#include "sclon/train/trainer.hpp"

namespace sclon::io {

/// Writes `state` into `dir`: state.json (segment, seed, timings, stop
/// reasons, loss histories, config hash) plus params.scln, anchors.scln and
/// segment_params.scln. Parameters round-trip bit for bit.
void write_checkpoint(const std::filesystem::path& dir, const train::TrainState& state, std::uint64_t config_hash);

/// Reads a checkpoint; throws ErrorCode::ConfigMismatch when the recorded
/// hash differs from `expected_hash`, FormatError on damaged files.
train::TrainState read_checkpoint(const std::filesystem::path& dir, std::uint64_t expected_hash);

/// Directory name used for the checkpoint taken after `segments` segments.
std::filesystem::path checkpoint_dir(const std::filesystem::path& root, int segments);

}  // namespace sclon::io
