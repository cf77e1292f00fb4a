#include "store.hpp"

#include <chrono>
#include <ctime>
#include <json.hpp>

#include <Eigen/Core>

#include "sclon/error.hpp"
#include "sclon/io/array_file.hpp"
#include "sclon/io/csv.hpp"
#include "sclon/residuals/residuals.hpp"

#ifndef SCLON_VERSION
#define SCLON_VERSION "unknown"
#endif

namespace sclon::tool {

using nlohmann::json;

namespace {

io::ArrayFile rows_to_array(const std::vector<std::vector<double>>& rows) {
  io::ArrayFile a;
  a.dims = {rows.size(), rows.empty() ? 0 : rows[0].size()};
  for (const auto& r : rows) {
    if (r.size() != a.dims[1]) fail(ErrorCode::ContractViolation, "ragged rows");
    a.data.insert(a.data.end(), r.begin(), r.end());
  }
  return a;
}

std::vector<std::vector<double>> array_to_rows(const io::ArrayFile& a, const fs::path& file) {
  if (a.kind != io::ElementKind::F64 || a.dims.size() != 2) fail(ErrorCode::FormatError, file.string() + ": expected a real matrix");
  std::vector<std::vector<double>> rows(a.dims[0]);
  for (std::size_t i = 0; i < rows.size(); ++i)
    rows[i].assign(a.data.begin() + i * a.dims[1], a.data.begin() + (i + 1) * a.dims[1]);
  return rows;
}

const char* kind_name(sampling::InputKind k) {
  switch (k) {
    case sampling::InputKind::Forcing: return "forcing";
    case sampling::InputKind::Coefficient: return "coefficient";
    case sampling::InputKind::InitialCondition: return "initial_condition";
  }
  return "?";
}

sampling::InputKind kind_from(const std::string& s) {
  if (s == "forcing") return sampling::InputKind::Forcing;
  if (s == "coefficient") return sampling::InputKind::Coefficient;
  if (s == "initial_condition") return sampling::InputKind::InitialCondition;
  fail(ErrorCode::FormatError, "unknown input kind " + s);
  return {};
}

json read_json(const fs::path& file) {
  try {
    return json::parse(io::read_text(file));
  } catch (const json::exception& e) {
    fail(ErrorCode::FormatError, file.string() + ": " + e.what());
  }
  return {};
}

}  // namespace

void write_inputs(const fs::path& dir, const std::vector<sampling::InputSample>& inputs, std::uint64_t first_index) {
  if (inputs.empty()) fail(ErrorCode::ContractViolation, "empty dataset");
  fs::create_directories(dir);
  std::vector<std::vector<double>> values, raw;
  for (const auto& s : inputs) {
    values.push_back(s.values);
    raw.push_back(s.raw);
  }
  io::write_array(dir / "values.scln", rows_to_array(values));
  const bool has_raw = !inputs[0].raw.empty();
  if (has_raw) io::write_array(dir / "raw.scln", rows_to_array(raw));
  const auto& s = inputs[0];
  const json m = {{"family", std::string(family_name(s.family))},
                  {"kind", kind_name(s.kind)},
                  {"n", s.n},
                  {"dims", s.dims},
                  {"count", inputs.size()},
                  {"first_index", first_index},
                  {"raw", has_raw}};
  io::write_text(dir / "manifest.json", m.dump(2) + "\n");
}

std::vector<sampling::InputSample> read_inputs(const fs::path& dir, const solvers::PdeProblem& problem) {
  const json m = read_json(dir / "manifest.json");
  try {
    if (family_from_name(m.at("family").get<std::string>()) != problem.family || m.at("n").get<int>() != problem.n)
      fail(ErrorCode::ConfigMismatch, dir.string() + " was generated for a different problem");
    const auto values = array_to_rows(io::read_array(dir / "values.scln"), dir / "values.scln");
    std::vector<std::vector<double>> raw;
    if (m.at("raw").get<bool>()) raw = array_to_rows(io::read_array(dir / "raw.scln"), dir / "raw.scln");
    std::vector<sampling::InputSample> out(values.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i].kind = kind_from(m.at("kind").get<std::string>());
      out[i].family = problem.family;
      out[i].n = problem.n;
      out[i].dims = m.at("dims").get<int>();
      out[i].values = values[i];
      if (!raw.empty()) out[i].raw = raw[i];
    }
    return out;
  } catch (const json::exception& e) {
    fail(ErrorCode::FormatError, (dir / "manifest.json").string() + ": " + e.what());
  }
  return {};
}

solvers::Representation representation_of(const solvers::PdeProblem& p) {
  return residuals::make_residual(p)->representation();
}

void write_trajectories(const fs::path& file, const std::vector<solvers::Trajectory>& trajectories) {
  if (trajectories.empty()) fail(ErrorCode::ContractViolation, "no trajectories");
  const auto& t0 = trajectories[0];
  const bool complex = t0.rep == solvers::Representation::Fourier1D || t0.rep == solvers::Representation::Fourier2D;
  io::ArrayFile a;
  a.kind = complex ? io::ElementKind::C128 : io::ElementKind::F64;
  a.dims = {trajectories.size(), t0.snapshots.size(), complex ? t0.width() / 2 : t0.width()};
  for (const auto& t : trajectories) {
    t.check_shape();
    if (t.snapshots.size() != a.dims[1]) fail(ErrorCode::ContractViolation, "trajectories differ in length");
    for (const auto& s : t.snapshots) a.data.insert(a.data.end(), s.begin(), s.end());
  }
  fs::create_directories(file.parent_path());
  io::write_array(file, a);
}

std::vector<solvers::Trajectory> read_trajectories(const fs::path& file, const solvers::PdeProblem& problem) {
  const auto a = io::read_array(file);
  const auto rep = representation_of(problem);
  const std::size_t width = solvers::representation_width(rep, problem.n);
  const std::size_t per = a.kind == io::ElementKind::C128 ? 2 : 1;
  if (a.dims.size() != 3 || a.dims[2] * per != width ||
      a.dims[1] != static_cast<std::uint64_t>(problem.total_steps() + 1))
    fail(ErrorCode::ConfigMismatch, file.string() + " does not match the configured problem");
  std::vector<solvers::Trajectory> out(a.dims[0]);
  auto it = a.data.begin();
  for (auto& t : out) {
    t.rep = rep;
    t.n = problem.n;
    t.snapshots.resize(a.dims[1]);
    for (auto& s : t.snapshots) {
      s.assign(it, it + width);
      it += width;
    }
  }
  return out;
}

void write_provenance(const fs::path& root, const std::string& command, const io::RunConfig& config,
                      const std::vector<std::string>& argv) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  const json p = {
      {"command", command},
      {"argv", argv},
      {"timestamp", stamp},
      {"config", json::parse(io::dump_config(config))},
      {"config_hash", io::hash_hex(io::config_hash(config))},
      {"seeds", {{"sampling", config.sampling.seed}, {"init", config.init_seed}}},
      {"versions",
       {{"sclon", SCLON_VERSION},
        {"compiler", __VERSION__},
        {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                      std::to_string(EIGEN_MINOR_VERSION)},
        {"json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." + std::to_string(NLOHMANN_JSON_VERSION_MINOR) +
                     "." + std::to_string(NLOHMANN_JSON_VERSION_PATCH)}}},
  };
  fs::create_directories(root);
  io::write_text(root / ("provenance_" + command + ".json"), p.dump(2) + "\n");
}

}  // namespace sclon::tool
