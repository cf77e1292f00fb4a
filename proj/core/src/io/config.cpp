#include "sclon/io/config.hpp"

#include <cstdio>
#include <json.hpp>
#include <set>

#include "sclon/error.hpp"
#include "sclon/io/csv.hpp"

namespace sclon::io {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& m) { fail(ErrorCode::InvalidConfig, m); }

void reject_unknown(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  if (!obj.is_object()) invalid(where + ": expected an object");
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) invalid(where + ": unknown key '" + key + "'");
}

template <class T>
void take(const json& obj, const char* key, T& out, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    invalid(where + "." + key + ": wrong type");
  }
}

net::LayerKind layer_kind_from(const std::string& s) {
  for (auto k : {net::LayerKind::Conv1dCircular, net::LayerKind::Conv1dZero, net::LayerKind::Conv2dCircular,
                 net::LayerKind::Dense})
    if (s == layer_kind_name(k)) return k;
  invalid("network.layers: unknown kind '" + s + "'");
}

net::Activation activation_from(const std::string& s) {
  if (s == "swish") return net::Activation::Swish;
  if (s == "identity") return net::Activation::Identity;
  invalid("network.layers: unknown activation '" + s + "'");
}

json problem_json(const solvers::PdeProblem& p) {
  return {{"family", family_name(p.family)},
          {"nu", p.nu},
          {"mu", p.mu},
          {"re", p.re},
          {"n", p.n},
          {"dt", p.dt},
          {"t_final", p.t_final},
          {"segments", p.segments},
          {"steps_per_segment", p.steps_per_segment},
          {"node_count", p.node_count},
          {"corrector", p.corrector},
          {"dealias", p.dealias},
          {"kse_printed_symbol", p.kse_printed_symbol},
          {"kolmogorov_mode", p.kolmogorov_mode},
          {"forcing_length_scale", p.forcing_length_scale}};
}

json to_json(const RunConfig& c) {
  json layers = json::array();
  for (const auto& l : c.network.layers)
    layers.push_back({{"kind", layer_kind_name(l.kind)},
                      {"width", l.width},
                      {"kernel", l.kernel},
                      {"activation", activation_name(l.activation)}});
  const auto& o = c.optimizer;
  return {{"problem", problem_json(c.problem)},
          {"sampling",
           {{"sigma", c.sampling.grf.sigma},
            {"tau", c.sampling.grf.tau},
            {"gamma", c.sampling.grf.gamma},
            {"length_scale", c.sampling.length_scale},
            {"amplitude", c.sampling.amplitude},
            {"p_train", c.p_train},
            {"p_test", c.p_test},
            {"seed", c.sampling.seed}}},
          {"network",
           {{"layers", layers},
            {"output", c.network.output == net::OutputMap::Nodal ? "nodal" : "coefficients"},
            {"input_scale", c.network.input_scale},
            {"cumulative", c.network.cumulative},
            {"anchored", c.network.anchored},
            {"anchor_input", c.network.anchor_input},
            {"anchor_scale", c.network.anchor_scale},
            {"output_scale", c.network.output_scale},
            {"init_seed", c.init_seed}}},
          {"optimizer",
           {{"method", o.optimizer == train::OptimizerKind::Adam ? "adam" : "lbfgs"},
            {"memory", o.lbfgs.memory},
            {"c1", o.lbfgs.c1},
            {"c2", o.lbfgs.c2},
            {"max_line_search", o.lbfgs.max_line_search},
            {"window", o.lbfgs.plateau.window},
            {"eps", o.lbfgs.plateau.eps},
            {"max_iters", o.lbfgs.plateau.max_iters},
            {"divergence_factor", o.lbfgs.divergence_factor},
            {"learning_rate", o.adam.learning_rate},
            {"threads", o.threads},
            {"loss_scale", o.loss_scale}}},
          {"paths", {{"output_dir", c.output_dir}}}};
}

}  // namespace

const char* layer_kind_name(net::LayerKind kind) {
  switch (kind) {
    case net::LayerKind::Conv1dCircular: return "conv1d_circular";
    case net::LayerKind::Conv1dZero: return "conv1d_zero";
    case net::LayerKind::Conv2dCircular: return "conv2d_circular";
    case net::LayerKind::Dense: return "dense";
  }
  return "?";
}

const char* activation_name(net::Activation a) { return a == net::Activation::Swish ? "swish" : "identity"; }

RunConfig default_config(Family family) {
  RunConfig c;
  c.problem = solvers::PdeProblem::defaults(family);
  c.sampling = sampling::default_sampling(c.problem, 0);
  c.network = net::default_network(c.problem);
  c.optimizer.loss_scale = 1.0 / c.p_train;
  return c;
}

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    invalid(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown(doc, "config", {"problem", "sampling", "network", "optimizer", "paths"});
  if (!doc.contains("problem") || !doc["problem"].contains("family")) invalid("problem.family is required");

  const json& p = doc["problem"];
  reject_unknown(p, "problem",
                 {"family", "nu", "mu", "re", "n", "dt", "t_final", "segments", "steps_per_segment", "node_count",
                  "corrector", "dealias", "kse_printed_symbol", "kolmogorov_mode", "forcing_length_scale"});
  std::string family_text;
  take(p, "family", family_text, "problem");
  Family family;
  try {
    family = family_from_name(family_text);
  } catch (const Error&) {
    invalid("problem.family: unknown family '" + family_text + "'");
  }

  RunConfig c = default_config(family);
  auto& pr = c.problem;
  take(p, "nu", pr.nu, "problem");
  take(p, "mu", pr.mu, "problem");
  take(p, "re", pr.re, "problem");
  take(p, "n", pr.n, "problem");
  take(p, "dt", pr.dt, "problem");
  take(p, "t_final", pr.t_final, "problem");
  take(p, "segments", pr.segments, "problem");
  take(p, "steps_per_segment", pr.steps_per_segment, "problem");
  take(p, "node_count", pr.node_count, "problem");
  take(p, "corrector", pr.corrector, "problem");
  take(p, "dealias", pr.dealias, "problem");
  take(p, "kse_printed_symbol", pr.kse_printed_symbol, "problem");
  take(p, "kolmogorov_mode", pr.kolmogorov_mode, "problem");
  take(p, "forcing_length_scale", pr.forcing_length_scale, "problem");
  try {
    pr.validate();
  } catch (const Error& e) {
    invalid(e.what());
  }

  // Grid-dependent defaults follow the problem as given.
  c.sampling = sampling::default_sampling(pr, 0);
  c.network = net::default_network(pr);

  if (doc.contains("sampling")) {
    const json& s = doc["sampling"];
    reject_unknown(s, "sampling", {"sigma", "tau", "gamma", "length_scale", "amplitude", "p_train", "p_test", "seed"});
    take(s, "sigma", c.sampling.grf.sigma, "sampling");
    take(s, "tau", c.sampling.grf.tau, "sampling");
    take(s, "gamma", c.sampling.grf.gamma, "sampling");
    take(s, "length_scale", c.sampling.length_scale, "sampling");
    take(s, "amplitude", c.sampling.amplitude, "sampling");
    take(s, "p_train", c.p_train, "sampling");
    take(s, "p_test", c.p_test, "sampling");
    take(s, "seed", c.sampling.seed, "sampling");
    c.sampling.grf.seed = c.sampling.seed;
  }
  if (c.p_train < 1 || c.p_test < 0) invalid("sampling: p_train must be >= 1 and p_test >= 0");
  if (c.sampling.grf.periodic) {
    try {
      c.sampling.grf.validate();
    } catch (const Error& e) {
      invalid(e.what());
    }
  }
  if (!(c.sampling.length_scale > 0) || !(c.sampling.amplitude > 0))
    invalid("sampling: length_scale and amplitude must be positive");
  c.optimizer.loss_scale = 1.0 / c.p_train;

  if (doc.contains("network")) {
    const json& n = doc["network"];
    reject_unknown(n, "network", {"layers", "output", "input_scale", "output_scale", "cumulative", "anchored", "anchor_input", "anchor_scale",
                               "init_seed"});
    if (n.contains("layers")) {
      if (!n["layers"].is_array()) invalid("network.layers: expected an array");
      c.network.layers.clear();
      for (const auto& l : n["layers"]) {
        reject_unknown(l, "network.layers[]", {"kind", "width", "kernel", "activation"});
        net::LayerSpec spec;
        std::string kind = "dense", act = "swish";
        take(l, "kind", kind, "network.layers[]");
        take(l, "width", spec.width, "network.layers[]");
        take(l, "kernel", spec.kernel, "network.layers[]");
        take(l, "activation", act, "network.layers[]");
        spec.kind = layer_kind_from(kind);
        spec.activation = activation_from(act);
        c.network.layers.push_back(spec);
      }
    }
    std::string output = c.network.output == net::OutputMap::Nodal ? "nodal" : "coefficients";
    take(n, "output", output, "network");
    if (output == "nodal") c.network.output = net::OutputMap::Nodal;
    else if (output == "coefficients") c.network.output = net::OutputMap::Coefficients;
    else invalid("network.output: expected 'coefficients' or 'nodal'");
    take(n, "input_scale", c.network.input_scale, "network");
    take(n, "cumulative", c.network.cumulative, "network");
    take(n, "anchored", c.network.anchored, "network");
    take(n, "anchor_input", c.network.anchor_input, "network");
    take(n, "anchor_scale", c.network.anchor_scale, "network");
    take(n, "output_scale", c.network.output_scale, "network");
    take(n, "init_seed", c.init_seed, "network");
  }
  try {
    net::Network probe(c.network, pr);
  } catch (const Error& e) {
    invalid(std::string("network: ") + e.what());
  }

  if (doc.contains("optimizer")) {
    const json& o = doc["optimizer"];
    reject_unknown(o, "optimizer",
                   {"method", "memory", "c1", "c2", "max_line_search", "window", "eps", "max_iters",
                    "divergence_factor", "learning_rate", "threads", "loss_scale"});
    auto& t = c.optimizer;
    std::string method = "lbfgs";
    take(o, "method", method, "optimizer");
    if (method == "lbfgs") t.optimizer = train::OptimizerKind::Lbfgs;
    else if (method == "adam") t.optimizer = train::OptimizerKind::Adam;
    else invalid("optimizer.method: expected 'lbfgs' or 'adam'");
    take(o, "memory", t.lbfgs.memory, "optimizer");
    take(o, "c1", t.lbfgs.c1, "optimizer");
    take(o, "c2", t.lbfgs.c2, "optimizer");
    take(o, "max_line_search", t.lbfgs.max_line_search, "optimizer");
    take(o, "window", t.lbfgs.plateau.window, "optimizer");
    take(o, "eps", t.lbfgs.plateau.eps, "optimizer");
    take(o, "max_iters", t.lbfgs.plateau.max_iters, "optimizer");
    take(o, "divergence_factor", t.lbfgs.divergence_factor, "optimizer");
    take(o, "learning_rate", t.adam.learning_rate, "optimizer");
    take(o, "threads", t.threads, "optimizer");
    take(o, "loss_scale", t.loss_scale, "optimizer");
    if (t.lbfgs.memory < 1 || !(0 < t.lbfgs.c1 && t.lbfgs.c1 < t.lbfgs.c2 && t.lbfgs.c2 < 1))
      invalid("optimizer: need memory >= 1 and 0 < c1 < c2 < 1");
    if (t.lbfgs.plateau.window < 1 || t.lbfgs.plateau.max_iters < 1 || t.threads < 1 || !(t.loss_scale > 0))
      invalid("optimizer: window, max_iters, threads and loss_scale must be positive");
  }
  c.optimizer.adam.plateau = c.optimizer.lbfgs.plateau;
  c.optimizer.adam.divergence_factor = c.optimizer.lbfgs.divergence_factor;

  if (doc.contains("paths")) {
    reject_unknown(doc["paths"], "paths", {"output_dir"});
    take(doc["paths"], "output_dir", c.output_dir, "paths");
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) { return parse_config(read_text(path)); }

std::string dump_config(const RunConfig& config) { return to_json(config).dump(2) + "\n"; }

std::uint64_t config_hash(const RunConfig& config) {
  // Output location and thread count do not change results.
  json j = to_json(config);
  j.erase("paths");
  j["optimizer"].erase("threads");
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : j.dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hash_hex(std::uint64_t hash) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace sclon::io
