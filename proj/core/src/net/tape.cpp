#include "sclon/net/tape.hpp"

#include <algorithm>

#include "sclon/error.hpp"

namespace sclon::net {

std::size_t Var::size() const { return tape->value(id).size(); }

std::span<const double> Var::value() const { return tape->value(id); }

Var Tape::constant(std::vector<double> value) {
  nodes_.push_back(Node{std::move(value), {}, false, {}, {}});
  return {this, static_cast<int>(nodes_.size()) - 1};
}

Var Tape::variable(std::vector<double> value) {
  nodes_.push_back(Node{std::move(value), {}, true, {}, {}});
  return {this, static_cast<int>(nodes_.size()) - 1};
}

Var Tape::external(std::span<const double> value, std::span<double> grad_sink) {
  require(value.size() == grad_sink.size(), "Tape::external: gradient sink length mismatch");
  nodes_.push_back(Node{std::vector<double>(value.begin(), value.end()), {}, true, {}, grad_sink});
  return {this, static_cast<int>(nodes_.size()) - 1};
}

Var Tape::push(std::vector<double> value, std::initializer_list<Var> operands, Backward backward) {
  return push(std::move(value), std::vector<Var>(operands), std::move(backward));
}

Var Tape::push(std::vector<double> value, const std::vector<Var>& operands, Backward backward) {
  bool tracks = false;
  for (const Var& v : operands) {
    require(v.tape == this, "Tape::push: operand from another tape");
    tracks = tracks || nodes_[v.id].tracks;
  }
  nodes_.push_back(Node{std::move(value), {}, tracks, tracks ? std::move(backward) : Backward{}, {}});
  return {this, static_cast<int>(nodes_.size()) - 1};
}

void Tape::backward(Var out, double seed) {
  require(out.tape == this, "Tape::backward: output from another tape");
  require(nodes_[out.id].value.size() == 1, "Tape::backward: output must be a scalar");
  for (auto& n : nodes_) {
    if (n.tracks) n.grad.assign(n.value.size(), 0.0);
  }
  if (!nodes_[out.id].tracks) return;
  nodes_[out.id].grad[0] = seed;
  for (int i = out.id; i >= 0; --i) {
    auto& n = nodes_[i];
    if (!n.tracks) continue;
    if (n.backward) n.backward(*this, i);
    if (!n.sink.empty())
      for (std::size_t k = 0; k < n.sink.size(); ++k) n.sink[k] += n.grad[k];
  }
}

}  // namespace sclon::net
