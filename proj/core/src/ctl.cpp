#include "xpl/ctl.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <unordered_map>

#include "xpl/errors.hpp"

namespace xpl::ctl {

std::size_t SatSet::size() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::vector<NodeId> SatSet::ids() const {
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out.push_back(static_cast<NodeId>(i));
  }
  return out;
}

std::vector<std::string> SatSet::keys(const net::Network& net) const {
  std::vector<std::string> out;
  for (NodeId id : ids()) out.push_back(net.key(id));
  return out;
}

void LabelMap::register_prop(const PropId& prop) {
  props_.try_emplace(prop, SatSet(node_count_));
}

void LabelMap::add(NodeId node, const PropId& prop) {
  auto it = props_.find(prop);
  if (it == props_.end()) throw UnboundAtom("proposition '" + prop + "' is not registered");
  it->second.insert(node);
}

const SatSet& LabelMap::nodes_with(const PropId& prop) const {
  auto it = props_.find(prop);
  if (it == props_.end()) throw UnboundAtom("proposition '" + prop + "' is not registered");
  return it->second;
}

bool LabelMap::has(NodeId node, const PropId& prop) const { return nodes_with(prop).contains(node); }

std::vector<PropId> LabelMap::labels_of(NodeId node) const {
  std::vector<PropId> out;
  for (const auto& [prop, set] : props_) {
    if (set.contains(node)) out.push_back(prop);
  }
  return out;
}

std::string to_string(const CtlFormula& formula) {
  return render(formula, [](const PropId& p) { return p; });
}

namespace {

using Bits = std::vector<std::uint8_t>;

// Adjacency in the direction a quantifier walks.
struct Direction {
  const net::Network& net;
  bool inverse;

  std::span<const NodeId> next(NodeId v) const {
    return inverse ? net.predecessors(v) : net.successors(v);
  }
  std::span<const NodeId> prev(NodeId v) const {
    return inverse ? net.successors(v) : net.predecessors(v);
  }
};

Bits complement(const Bits& a) {
  Bits out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = !a[i];
  return out;
}

Bits intersect(const Bits& a, const Bits& b) {
  Bits out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] && b[i];
  return out;
}

Bits unite(const Bits& a, const Bits& b) {
  Bits out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] || b[i];
  return out;
}

// Nodes with at least one `dir` successor in `target`: one sweep over the
// predecessors of target nodes.
Bits exists_next(const Direction& dir, const Bits& target) {
  Bits out(target.size(), 0);
  for (NodeId w = 0; w < target.size(); ++w) {
    if (!target[w]) continue;
    for (NodeId v : dir.prev(w)) out[v] = 1;
  }
  return out;
}

// Least fixpoint of Z = goal | (stay & pre(Z)): backward breadth-first search
// from the goal nodes through nodes satisfying `stay`.
Bits exists_until(const Direction& dir, const Bits& stay, const Bits& goal) {
  Bits out = goal;
  std::vector<NodeId> queue;
  for (NodeId v = 0; v < goal.size(); ++v) {
    if (goal[v]) queue.push_back(v);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (NodeId u : dir.prev(queue[head])) {
      if (!out[u] && stay[u]) {
        out[u] = 1;
        queue.push_back(u);
      }
    }
  }
  return out;
}

// Greatest fixpoint for EG: a node satisfies EG p iff, inside the p-subgraph,
// it reaches either a sink of the full graph or a cycle (a strongly connected
// component with more than one node, or a self-loop).
Bits exists_globally(const Direction& dir, const Bits& inside) {
  std::size_t n = inside.size();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited);
  std::vector<std::size_t> low(n, 0);
  Bits on_stack(n, 0);
  Bits anchor(n, 0);
  std::vector<NodeId> scc_stack;
  struct Frame {
    NodeId node;
    std::size_t next_edge;
  };
  std::vector<Frame> frames;
  std::size_t counter = 0;

  for (NodeId start = 0; start < n; ++start) {
    if (!inside[start] || index[start] != kUnvisited) continue;
    index[start] = low[start] = counter++;
    scc_stack.push_back(start);
    on_stack[start] = 1;
    frames.push_back({start, 0});

    while (!frames.empty()) {
      NodeId v = frames.back().node;
      auto next = dir.next(v);
      if (frames.back().next_edge < next.size()) {
        NodeId w = next[frames.back().next_edge++];
        if (!inside[w]) continue;
        if (w == v) anchor[v] = 1;
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          scc_stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (next.empty()) anchor[v] = 1;  // sink of the whole graph
      if (low[v] == index[v]) {
        std::size_t begin = scc_stack.size();
        do {
          --begin;
        } while (scc_stack[begin] != v);
        bool cyclic = scc_stack.size() - begin > 1;
        for (std::size_t i = begin; i < scc_stack.size(); ++i) {
          on_stack[scc_stack[i]] = 0;
          if (cyclic) anchor[scc_stack[i]] = 1;
        }
        scc_stack.resize(begin);
      }
      frames.pop_back();
      if (!frames.empty()) {
        NodeId parent = frames.back().node;
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  }
  return exists_until(dir, inside, anchor);
}

class Checker {
 public:
  Checker(const net::Network& net, const LabelMap& labels) : net_(net), labels_(labels) {}

  const Bits& eval(const CtlFormula& f) {
    if (auto hit = by_identity_.find(f.identity()); hit != by_identity_.end()) {
      return results_[hit->second];
    }
    std::size_t lhs = arity(f.op()) >= 1 ? id_of(f.lhs()) : kNone;
    std::size_t rhs = arity(f.op()) == 2 ? id_of(f.rhs()) : kNone;
    Key key{f.op(), f.op() == Op::atom ? f.atom_value() : PropId(), lhs, rhs};
    auto [it, inserted] = by_structure_.try_emplace(key, results_.size());
    if (inserted) results_.push_back(compute(f.op(), key.atom, lhs, rhs));
    by_identity_.emplace(f.identity(), it->second);
    return results_[it->second];
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  struct Key {
    Op op;
    PropId atom;
    std::size_t lhs, rhs;
    bool operator<(const Key& o) const {
      return std::tie(op, atom, lhs, rhs) < std::tie(o.op, o.atom, o.lhs, o.rhs);
    }
  };

  std::size_t id_of(const CtlFormula& f) {
    eval(f);
    return by_identity_.at(f.identity());
  }

  Bits compute(Op op, const PropId& atom, std::size_t lhs, std::size_t rhs) {
    std::size_t n = net_.node_count();
    auto arg = [&](std::size_t i) -> const Bits& { return results_[i]; };
    Direction dir{net_, is_inverse(op)};
    Bits all(n, 1);
    switch (forward_of(op)) {
      case Op::truth: return all;
      case Op::falsity: return Bits(n, 0);
      case Op::atom: return labels_.nodes_with(atom).bits();
      case Op::negation: return complement(arg(lhs));
      case Op::conjunction: return intersect(arg(lhs), arg(rhs));
      case Op::disjunction: return unite(arg(lhs), arg(rhs));
      case Op::ex: return exists_next(dir, arg(lhs));
      case Op::ax: return complement(exists_next(dir, complement(arg(lhs))));
      case Op::ef: return exists_until(dir, all, arg(lhs));
      case Op::ag: return complement(exists_until(dir, all, complement(arg(lhs))));
      case Op::eg: return exists_globally(dir, arg(lhs));
      case Op::af: return complement(exists_globally(dir, complement(arg(lhs))));
      case Op::eu: return exists_until(dir, arg(lhs), arg(rhs));
      case Op::au: {
        Bits not_phi = complement(arg(lhs));
        Bits not_psi = complement(arg(rhs));
        Bits escape = exists_until(dir, not_psi, intersect(not_phi, not_psi));
        Bits never = exists_globally(dir, not_psi);
        return complement(unite(escape, never));
      }
      default: break;
    }
    return Bits(n, 0);
  }

  const net::Network& net_;
  const LabelMap& labels_;
  std::vector<Bits> results_;
  std::map<Key, std::size_t> by_structure_;
  std::unordered_map<const void*, std::size_t> by_identity_;
};

}  // namespace

SatSet model_check(const net::Network& net, const LabelMap& labels, const CtlFormula& formula) {
  if (labels.node_count() != net.node_count()) {
    throw Error("label map covers " + std::to_string(labels.node_count()) + " nodes, network has " +
                std::to_string(net.node_count()));
  }
  Checker checker(net, labels);
  return SatSet(checker.eval(formula));
}

}  // namespace xpl::ctl
