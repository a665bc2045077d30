#include <limits>

#include "xpl/ctl.hpp"
#include "xpl/errors.hpp"

namespace xpl::ctl {

bool is_witnessable(Op op) {
  switch (forward_of(op)) {
    case Op::ex:
    case Op::ef:
    case Op::eu: return true;
    default: return false;
  }
}

Witness witness(const net::Network& net, const LabelMap& labels, const CtlFormula& formula,
                NodeId node) {
  if (node >= net.node_count()) throw Error("witness: node id out of range");
  if (!is_witnessable(formula.op())) return Witness{};

  if (!model_check(net, labels, formula).contains(node)) {
    throw NotSatisfied("node '" + net.key(node) + "' does not satisfy " + to_string(formula));
  }

  bool inverse = is_inverse(formula.op());
  auto next = [&](NodeId v) { return inverse ? net.predecessors(v) : net.successors(v); };
  Op op = forward_of(formula.op());

  if (op == Op::ex) {
    SatSet target = model_check(net, labels, formula.lhs());
    for (NodeId w : next(node)) {
      if (target.contains(w)) return Witness{Witness::Kind::path, {node, w}, inverse};
    }
    throw Error("witness: no successor satisfies the operand");  // unreachable after the check
  }

  SatSet stay = op == Op::eu ? model_check(net, labels, formula.lhs())
                             : model_check(net, labels, CtlFormula::truth());
  SatSet goal = model_check(net, labels, op == Op::eu ? formula.rhs() : formula.lhs());
  if (goal.contains(node)) return Witness{Witness::Kind::node, {node}, inverse};

  // Breadth-first search; neighbours come in ascending key order, so the first
  // discovery of each node fixes the lexicographically smallest shortest path.
  constexpr NodeId kNone = std::numeric_limits<NodeId>::max();
  std::vector<NodeId> parent(net.node_count(), kNone);
  std::vector<NodeId> queue{node};
  parent[node] = node;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    NodeId u = queue[head];
    for (NodeId w : next(u)) {
      if (parent[w] != kNone) continue;
      parent[w] = u;
      if (goal.contains(w)) {
        std::vector<NodeId> path{w};
        while (path.back() != node) path.push_back(parent[path.back()]);
        return Witness{Witness::Kind::path, {path.rbegin(), path.rend()}, inverse};
      }
      if (stay.contains(w)) queue.push_back(w);
    }
  }
  throw Error("witness: no path to a target");  // unreachable after the check
}

}  // namespace xpl::ctl
