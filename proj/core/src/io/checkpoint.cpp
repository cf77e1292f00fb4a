#include "sclon/io/checkpoint.hpp"

#include <cstdio>
#include <json.hpp>

#include "sclon/error.hpp"
#include "sclon/io/array_file.hpp"
#include "sclon/io/config.hpp"
#include "sclon/io/csv.hpp"

namespace sclon::io {

using nlohmann::json;

namespace {

train::StopReason stop_reason_from(const std::string& s) {
  using train::StopReason;
  for (auto r : {StopReason::Plateau, StopReason::MaxIterations, StopReason::ZeroLoss, StopReason::ZeroGradient,
                 StopReason::LineSearchStalled, StopReason::Diverged})
    if (s == train::stop_reason_name(r)) return r;
  fail(ErrorCode::FormatError, "checkpoint: unknown stop reason '" + s + "'");
}

std::vector<std::vector<double>> rows_of(const ArrayFile& a) {
  if (a.kind != ElementKind::F64 || a.dims.size() != 2) fail(ErrorCode::FormatError, "checkpoint: expected f64 matrix");
  std::vector<std::vector<double>> rows(a.dims[0]);
  for (std::size_t i = 0; i < rows.size(); ++i)
    rows[i].assign(a.data.begin() + i * a.dims[1], a.data.begin() + (i + 1) * a.dims[1]);
  return rows;
}

ArrayFile matrix_or_empty(const std::vector<std::vector<double>>& rows, std::size_t width) {
  if (!rows.empty()) return make_matrix(rows);
  ArrayFile a;
  a.dims = {0, width};
  return a;
}

}  // namespace

std::filesystem::path checkpoint_dir(const std::filesystem::path& root, int segments) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "segment_%03d", segments);
  return root / buf;
}

void write_checkpoint(const std::filesystem::path& dir, const train::TrainState& state, std::uint64_t config_hash) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());

  json reasons = json::array();
  for (auto r : state.stop_reasons) reasons.push_back(train::stop_reason_name(r));
  const json doc{{"format", 1},
                 {"config_hash", hash_hex(config_hash)},
                 {"segment", state.segment},
                 {"seed", state.seed},
                 {"wall_seconds", state.wall_seconds},
                 {"stop_reasons", reasons},
                 {"loss_history", state.loss_history}};
  write_array(dir / "params.scln", make_vector(state.params));
  write_array(dir / "anchors.scln", matrix_or_empty(state.anchors, 0));
  write_array(dir / "segment_params.scln", matrix_or_empty(state.segment_params, state.params.size()));
  write_text(dir / "state.json", doc.dump(2) + "\n");
}

train::TrainState read_checkpoint(const std::filesystem::path& dir, std::uint64_t expected_hash) {
  json doc;
  try {
    doc = json::parse(read_text(dir / "state.json"));
  } catch (const json::exception& e) {
    fail(ErrorCode::FormatError, std::string("checkpoint state.json: ") + e.what());
  }
  train::TrainState s;
  try {
    const auto recorded = doc.at("config_hash").get<std::string>();
    if (recorded != hash_hex(expected_hash))
      fail(ErrorCode::ConfigMismatch,
           "checkpoint was written for config " + recorded + ", current config is " + hash_hex(expected_hash));
    if (doc.at("format").get<int>() != 1) fail(ErrorCode::FormatError, "checkpoint: unsupported format");
    s.segment = doc.at("segment").get<int>();
    s.seed = doc.at("seed").get<std::uint64_t>();
    s.wall_seconds = doc.at("wall_seconds").get<double>();
    s.loss_history = doc.at("loss_history").get<std::vector<std::vector<double>>>();
    for (const auto& r : doc.at("stop_reasons")) s.stop_reasons.push_back(stop_reason_from(r.get<std::string>()));
  } catch (const json::exception& e) {
    fail(ErrorCode::FormatError, std::string("checkpoint state.json: ") + e.what());
  }
  const auto params = read_array(dir / "params.scln");
  if (params.kind != ElementKind::F64 || params.dims.size() != 1)
    fail(ErrorCode::FormatError, "checkpoint: params must be an f64 vector");
  s.params = params.data;
  s.anchors = rows_of(read_array(dir / "anchors.scln"));
  s.segment_params = rows_of(read_array(dir / "segment_params.scln"));
  if (static_cast<int>(s.segment_params.size()) != s.segment || s.loss_history.size() != s.segment_params.size())
    fail(ErrorCode::FormatError, "checkpoint: segment count disagrees with stored parameters");
  return s;
}

}  // namespace sclon::io
