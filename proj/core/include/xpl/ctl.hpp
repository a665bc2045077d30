#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "xpl/formula.hpp"
#include "xpl/network.hpp"

// Explicit-state CTL model checking over networks, with inverse quantifiers.
//
// Paths are maximal: infinite, or ending at a node without successors. At
// such a sink s, EX p is false, AX p is true, and EG p, AF p and EU(q, p)
// each hold iff p holds at s.
namespace xpl::ctl {

using net::NodeId;
using PropId = std::string;
using CtlFormula = Formula<PropId>;

// Set of nodes, stored as one flag per node id.
class SatSet {
 public:
  SatSet() = default;
  explicit SatSet(std::size_t node_count) : bits_(node_count, 0) {}
  explicit SatSet(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {}

  std::size_t universe() const noexcept { return bits_.size(); }
  bool contains(NodeId id) const { return bits_[id] != 0; }
  void insert(NodeId id) { bits_[id] = 1; }
  std::size_t size() const;

  // Members in ascending id (= key) order.
  std::vector<NodeId> ids() const;
  std::vector<std::string> keys(const net::Network& net) const;

  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

  friend bool operator==(const SatSet&, const SatSet&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

// Which atomic propositions hold at which nodes. A proposition must be
// registered before it can label nodes or appear in a checked formula.
class LabelMap {
 public:
  explicit LabelMap(std::size_t node_count) : node_count_(node_count) {}

  std::size_t node_count() const noexcept { return node_count_; }

  // Idempotent.
  void register_prop(const PropId& prop);
  bool is_registered(const PropId& prop) const { return props_.count(prop) != 0; }

  // Throws UnboundAtom for unregistered propositions.
  void add(NodeId node, const PropId& prop);
  const SatSet& nodes_with(const PropId& prop) const;
  bool has(NodeId node, const PropId& prop) const;

  // Propositions holding at `node`, in ascending order.
  std::vector<PropId> labels_of(NodeId node) const;

 private:
  std::size_t node_count_;
  std::map<PropId, SatSet> props_;
};

// Satisfaction set of `formula`, in O(k (n + m)) for a formula with k
// operators. Structurally identical subformulas are evaluated once. Throws
// UnboundAtom when an atom is not registered in `labels`.
SatSet model_check(const net::Network& net, const LabelMap& labels, const CtlFormula& formula);

// Reference checker for cross-validation on small networks (n <= 12). Each
// operator is computed directly from its definition over an adjacency matrix
// built from the edge list. Throws SizeExceeded for larger networks.
SatSet oracle_check(const net::Network& net, const LabelMap& labels, const CtlFormula& formula);

inline constexpr std::size_t kOracleMaxNodes = 12;

struct Witness {
  enum class Kind : std::uint8_t {
    path,           // the node reaches a target along `path`
    node,           // the node is itself the target; `path` is just [node]
    none_available  // operator has no path witness (universal, EG, boolean)
  };
  Kind kind = Kind::none_available;
  std::vector<NodeId> path;
  // True for inverse quantifiers: consecutive path nodes are linked by edges
  // pointing backwards (path[i+1] -> path[i]).
  bool inverse = false;
};

// Evidence that `node` satisfies an existential formula (EX, EF, EU and their
// inverses): a shortest path, ties broken by ascending key at each step. For
// other top-level operators returns Kind::none_available. Throws
// NotSatisfied if `node` is not in the formula's satisfaction set.
Witness witness(const net::Network& net, const LabelMap& labels, const CtlFormula& formula,
                NodeId node);

bool is_witnessable(Op op);

std::string to_string(const CtlFormula& formula);

}  // namespace xpl::ctl
