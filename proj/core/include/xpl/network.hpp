#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xpl/xml.hpp"

namespace xpl::net {

// Dense node index. Ids are assigned in ascending key order, so sorting by id
// sorts by key.
using NodeId = std::uint32_t;

struct Edge {
  NodeId from = 0;
  NodeId to = 0;
  double weight = 1.0;
};

// A node-attributed network: every node carries an XML payload (its `node`
// element) and edges form a multiset. Immutable once built.
class Network {
 public:
  Network() = default;

  bool directed() const noexcept { return directed_; }
  std::size_t node_count() const noexcept { return keys_.size(); }
  // Number of edge entries, counting parallel edges separately.
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::span<const std::string> keys() const noexcept { return keys_; }
  const std::string& key(NodeId id) const { return keys_[id]; }
  std::optional<NodeId> find(std::string_view key) const;
  // Throws UnknownKey.
  NodeId id_of(std::string_view key) const;

  // The `node` element describing this node.
  const xml::Node& payload(NodeId id) const { return *payloads_[id]; }

  std::span<const Edge> edges() const noexcept { return edges_; }

  // Distinct neighbours in ascending key order. For undirected networks
  // successors and predecessors coincide.
  std::span<const NodeId> successors(NodeId id) const;
  std::span<const NodeId> predecessors(NodeId id) const;
  std::vector<std::string> successors(std::string_view key) const;
  std::vector<std::string> predecessors(std::string_view key) const;

  // Number of parallel edges from -> to (either orientation when undirected).
  std::size_t edge_multiplicity(NodeId from, NodeId to) const;

  // Degrees counted with multiplicity. Undirected: out == in == degree, with
  // self-loops contributing 2.
  std::size_t out_degree(NodeId id) const { return out_degree_[id]; }
  std::size_t in_degree(NodeId id) const { return in_degree_[id]; }

  // Every directed edge reversed; undirected networks come back unchanged.
  Network transposed() const;

 private:
  friend class NetworkBuilder;

  void index();

  bool directed_ = true;
  std::vector<std::string> keys_;
  std::vector<const xml::Node*> payloads_;
  std::vector<std::shared_ptr<const xml::Document>> owners_;
  std::vector<Edge> edges_;

  // Compressed adjacency: neighbours of v are ids[offsets[v] .. offsets[v+1]).
  std::vector<std::size_t> succ_offsets_, pred_offsets_;
  std::vector<NodeId> succ_ids_, pred_ids_;
  std::vector<std::size_t> out_degree_, in_degree_;
};

class NetworkBuilder {
 public:
  explicit NetworkBuilder(bool directed = true) : directed_(directed) {}

  // `element` must be a `node` element with a `key` attribute equal to `key`;
  // it defaults to the document root.
  NetworkBuilder& add_node(std::string key, std::shared_ptr<const xml::Document> doc,
                           const xml::Node* element = nullptr);
  // A node with the empty payload `<node key="..."/>`.
  NetworkBuilder& add_node(std::string key);
  NetworkBuilder& add_edge(std::string from, std::string to, double weight = 1.0);

  // Throws FormatError on duplicate or empty keys, dangling endpoints and
  // non-positive weights.
  Network build();

 private:
  struct PendingNode {
    std::string key;
    std::shared_ptr<const xml::Document> doc;
    const xml::Node* element;
  };
  struct PendingEdge {
    std::string from, to;
    double weight;
  };

  bool directed_;
  std::vector<PendingNode> nodes_;
  std::vector<PendingEdge> edges_;
};

// Reads the network file format:
//
//   <network directed="true|false">
//     <node key="K"> ...payload... </node>
//     <edge from="K1" to="K2" weight="W"/>
//   </network>
//
// `directed` defaults to true and `weight` to 1. XML errors surface as
// SyntaxError, structural ones as FormatError.
Network parse_network(std::string_view input);

std::string serialize_network(const Network& net);

// Same direction flag, keys, payloads and edge multiset.
bool structurally_equal(const Network& a, const Network& b);

}  // namespace xpl::net
