#include "xpl/network.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <tuple>
#include <utility>

#include "xpl/errors.hpp"
#include "xpl/xpath.hpp"

namespace xpl::net {

std::optional<NodeId> Network::find(std::string_view key) const {
  auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
  if (it == keys_.end() || *it != key) return std::nullopt;
  return static_cast<NodeId>(it - keys_.begin());
}

NodeId Network::id_of(std::string_view key) const {
  if (auto id = find(key)) return *id;
  throw UnknownKey(std::string(key));
}

std::span<const NodeId> Network::successors(NodeId id) const {
  return std::span<const NodeId>(succ_ids_).subspan(succ_offsets_[id],
                                                    succ_offsets_[id + 1] - succ_offsets_[id]);
}

std::span<const NodeId> Network::predecessors(NodeId id) const {
  return std::span<const NodeId>(pred_ids_).subspan(pred_offsets_[id],
                                                    pred_offsets_[id + 1] - pred_offsets_[id]);
}

namespace {

std::vector<std::string> keys_of(const Network& net, std::span<const NodeId> ids) {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (NodeId id : ids) out.push_back(net.key(id));
  return out;
}

std::string attribute_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Builds a deduplicated, sorted compressed adjacency from (source, target)
// pairs.
void compress(std::size_t n, std::vector<std::pair<NodeId, NodeId>> pairs,
              std::vector<std::size_t>& offsets, std::vector<NodeId>& ids) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  offsets.assign(n + 1, 0);
  for (const auto& [s, t] : pairs) ++offsets[s + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  ids.resize(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) ids[i] = pairs[i].second;
}

}  // namespace

std::vector<std::string> Network::successors(std::string_view key) const {
  return keys_of(*this, successors(id_of(key)));
}

std::vector<std::string> Network::predecessors(std::string_view key) const {
  return keys_of(*this, predecessors(id_of(key)));
}

std::size_t Network::edge_multiplicity(NodeId from, NodeId to) const {
  std::size_t count = 0;
  for (const Edge& e : edges_) {
    if ((e.from == from && e.to == to) || (!directed_ && e.from == to && e.to == from)) ++count;
  }
  return count;
}

void Network::index() {
  std::size_t n = keys_.size();
  std::vector<std::pair<NodeId, NodeId>> forward;
  std::vector<std::pair<NodeId, NodeId>> backward;
  forward.reserve(edges_.size() * (directed_ ? 1 : 2));
  out_degree_.assign(n, 0);
  in_degree_.assign(n, 0);
  for (const Edge& e : edges_) {
    forward.emplace_back(e.from, e.to);
    if (directed_) {
      backward.emplace_back(e.to, e.from);
      ++out_degree_[e.from];
      ++in_degree_[e.to];
    } else {
      forward.emplace_back(e.to, e.from);
      ++out_degree_[e.from];
      ++out_degree_[e.to];
    }
  }
  compress(n, std::move(forward), succ_offsets_, succ_ids_);
  if (directed_) {
    compress(n, std::move(backward), pred_offsets_, pred_ids_);
  } else {
    pred_offsets_ = succ_offsets_;
    pred_ids_ = succ_ids_;
    in_degree_ = out_degree_;
  }
}

Network Network::transposed() const {
  Network t = *this;
  if (!directed_) return t;
  for (Edge& e : t.edges_) std::swap(e.from, e.to);
  std::swap(t.succ_offsets_, t.pred_offsets_);
  std::swap(t.succ_ids_, t.pred_ids_);
  std::swap(t.out_degree_, t.in_degree_);
  return t;
}

NetworkBuilder& NetworkBuilder::add_node(std::string key, std::shared_ptr<const xml::Document> doc,
                                         const xml::Node* element) {
  if (!element) element = &doc->root();
  nodes_.push_back({std::move(key), std::move(doc), element});
  return *this;
}

NetworkBuilder& NetworkBuilder::add_node(std::string key) {
  std::string text = "<node key=\"" + attribute_escape(key) + "\"/>";
  auto doc = std::make_shared<const xml::Document>(xml::parse(text));
  return add_node(std::move(key), std::move(doc));
}

NetworkBuilder& NetworkBuilder::add_edge(std::string from, std::string to, double weight) {
  edges_.push_back({std::move(from), std::move(to), weight});
  return *this;
}

Network NetworkBuilder::build() {
  Network net;
  net.directed_ = directed_;

  std::sort(nodes_.begin(), nodes_.end(),
            [](const PendingNode& a, const PendingNode& b) { return a.key < b.key; });
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const PendingNode& node = nodes_[i];
    if (node.key.empty()) throw FormatError("node with empty key");
    if (i > 0 && nodes_[i - 1].key == node.key) {
      throw FormatError("duplicate node key '" + node.key + "'");
    }
    if (!node.element->is_element() || node.element->name() != "node" ||
        node.element->attribute("key") != std::optional<std::string_view>(node.key)) {
      throw FormatError("payload of node '" + node.key + "' must be a node element with key=\"" +
                        node.key + "\"");
    }
  }

  net.keys_.reserve(nodes_.size());
  net.payloads_.reserve(nodes_.size());
  for (PendingNode& node : nodes_) {
    net.keys_.push_back(std::move(node.key));
    net.payloads_.push_back(node.element);
    if (net.owners_.empty() || net.owners_.back() != node.doc) net.owners_.push_back(std::move(node.doc));
  }
  std::sort(net.owners_.begin(), net.owners_.end());
  net.owners_.erase(std::unique(net.owners_.begin(), net.owners_.end()), net.owners_.end());

  net.edges_.reserve(edges_.size());
  for (const PendingEdge& e : edges_) {
    auto from = net.find(e.from);
    if (!from) throw FormatError("edge endpoint '" + e.from + "' is not a declared node");
    auto to = net.find(e.to);
    if (!to) throw FormatError("edge endpoint '" + e.to + "' is not a declared node");
    if (!(e.weight > 0) || !std::isfinite(e.weight)) {
      throw FormatError("edge " + e.from + " -> " + e.to + " has a non-positive weight");
    }
    net.edges_.push_back({*from, *to, e.weight});
  }
  nodes_.clear();
  edges_.clear();
  net.index();
  return net;
}

Network parse_network(std::string_view input) {
  auto doc = std::make_shared<const xml::Document>(xml::parse(input));
  const xml::Node& root = doc->root();
  if (root.name() != "network") {
    throw FormatError("root element must be <network>, found <" + root.name() + ">");
  }
  bool directed = true;
  if (auto flag = root.attribute("directed")) {
    if (*flag == "true") {
      directed = true;
    } else if (*flag == "false") {
      directed = false;
    } else {
      throw FormatError("attribute directed must be \"true\" or \"false\"");
    }
  }

  NetworkBuilder builder(directed);
  for (const xml::Node* child : root.children()) {
    if (child->is_text()) throw FormatError("unexpected text inside <network>");
    if (child->name() == "node") {
      auto key = child->attribute("key");
      if (!key) throw FormatError("<node> without a key attribute");
      builder.add_node(std::string(*key), doc, child);
    } else if (child->name() == "edge") {
      auto from = child->attribute("from");
      auto to = child->attribute("to");
      if (!from || !to) throw FormatError("<edge> requires from and to attributes");
      double weight = 1.0;
      if (auto w = child->attribute("weight")) {
        if (!xpath::parse_decimal(*w, weight)) {
          throw FormatError("edge weight \"" + std::string(*w) + "\" is not a number");
        }
      }
      builder.add_edge(std::string(*from), std::string(*to), weight);
    } else {
      throw FormatError("unknown element <" + child->name() + "> inside <network>");
    }
  }
  return builder.build();
}

namespace {

std::string weight_text(double w) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, w, std::chars_format::fixed);
  return std::string(buf, res.ptr);
}

std::vector<std::tuple<NodeId, NodeId, double>> normalized_edges(const Network& net) {
  std::vector<std::tuple<NodeId, NodeId, double>> out;
  for (const Edge& e : net.edges()) {
    NodeId a = e.from;
    NodeId b = e.to;
    if (!net.directed() && b < a) std::swap(a, b);
    out.emplace_back(a, b, e.weight);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::string serialize_network(const Network& net) {
  std::string out = "<network directed=\"";
  out += net.directed() ? "true" : "false";
  out += "\">\n";
  for (NodeId id = 0; id < net.node_count(); ++id) {
    out += "  ";
    out += xml::serialize(net.payload(id));
    out += '\n';
  }
  for (const Edge& e : net.edges()) {
    out += "  <edge from=\"" + attribute_escape(net.key(e.from)) + "\" to=\"" +
           attribute_escape(net.key(e.to)) + "\"";
    if (e.weight != 1.0) out += " weight=\"" + weight_text(e.weight) + "\"";
    out += "/>\n";
  }
  out += "</network>\n";
  return out;
}

bool structurally_equal(const Network& a, const Network& b) {
  if (a.directed() != b.directed() || a.node_count() != b.node_count()) return false;
  if (!std::equal(a.keys().begin(), a.keys().end(), b.keys().begin())) return false;
  for (NodeId id = 0; id < a.node_count(); ++id) {
    if (!xml::structurally_equal(a.payload(id), b.payload(id))) return false;
  }
  return normalized_edges(a) == normalized_edges(b);
}

}  // namespace xpl::net
