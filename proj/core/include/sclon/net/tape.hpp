#pragma once

#include <functional>
#include <span>
#include <vector>

namespace sclon::net {

class Tape;

/// Handle to a node on a Tape. Values are flat double arrays; complex data is
/// interleaved (re, im).
struct Var {
  Tape* tape = nullptr;
  int id = -1;

  std::size_t size() const;
  std::span<const double> value() const;
  bool valid() const { return tape != nullptr && id >= 0; }
};

/// Single-use reverse-mode tape. Nodes are appended in evaluation order, so the
/// recorded graph is acyclic by construction; backward() visits them in
/// reverse. A tape is owned by one thread.
class Tape {
 public:
  /// Backward rule: reads the node's own adjoint and accumulates into the
  /// adjoints of its operands through Tape::grad.
  using Backward = std::function<void(Tape&, int self)>;

  /// Leaf whose adjoint is discarded.
  Var constant(std::vector<double> value);
  /// Leaf that tracks its adjoint; read it with grad() after backward().
  Var variable(std::vector<double> value);
  /// Leaf viewing caller-owned parameters. backward() adds the adjoint into
  /// `grad_sink`, which must outlive the tape and have the same length.
  Var external(std::span<const double> value, std::span<double> grad_sink);

  /// Appends an op node. Its adjoint is tracked iff any operand tracks one.
  Var push(std::vector<double> value, std::initializer_list<Var> operands, Backward backward);
  /// Same with operands given as a list.
  Var push(std::vector<double> value, const std::vector<Var>& operands, Backward backward);

  const std::vector<double>& value(int id) const { return nodes_[id].value; }
  std::vector<double>& value_mut(int id) { return nodes_[id].value; }
  /// Adjoint buffer; empty for nodes that do not track one.
  std::vector<double>& grad(int id) { return nodes_[id].grad; }
  const std::vector<double>& grad(int id) const { return nodes_[id].grad; }
  bool tracks(int id) const { return nodes_[id].tracks; }

  /// Seeds d(out)/d(out) = seed for a scalar node and propagates. Adjoints are
  /// zeroed first, so backward() may be called once per recorded graph.
  void backward(Var out, double seed = 1.0);

  std::size_t node_count() const { return nodes_.size(); }

 private:
  struct Node {
    std::vector<double> value;
    std::vector<double> grad;
    bool tracks = false;
    Backward backward;
    std::span<double> sink;
  };
  std::vector<Node> nodes_;
};

}  // namespace sclon::net
