#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace xpl::xml {

enum class NodeKind : std::uint8_t { document, element, text, attribute };

// One item of a parsed tree. Nodes are owned by their Document and never
// change after parsing; hand them around by const reference or pointer.
//
// The document node is a synthetic parent of the root element. It is not an
// element, so name tests and `*` never select it.
class Node {
 public:
  NodeKind kind() const noexcept { return kind_; }
  bool is_element() const noexcept { return kind_ == NodeKind::element; }
  bool is_text() const noexcept { return kind_ == NodeKind::text; }
  bool is_attribute() const noexcept { return kind_ == NodeKind::attribute; }

  // Tag name of an element or name of an attribute; empty otherwise.
  const std::string& name() const noexcept { return name_; }
  // Content of a text node or value of an attribute; empty otherwise.
  const std::string& value() const noexcept { return value_; }

  const Node* parent() const noexcept { return parent_; }
  std::span<const Node* const> children() const noexcept { return children_; }
  std::span<const Node* const> attributes() const noexcept { return attributes_; }

  // Position among the parent's children (attributes: among the attributes).
  std::size_t sibling_index() const noexcept { return sibling_index_; }
  // Pre-order rank within the owning document; attributes of an element come
  // right after the element and before its children.
  std::size_t order() const noexcept { return order_; }

  std::optional<std::string_view> attribute(std::string_view attr_name) const;
  // First child element named `child_name`, or nullptr.
  const Node* child_element(std::string_view child_name) const;

 private:
  friend class Document;
  friend class Parser;

  NodeKind kind_ = NodeKind::element;
  std::string name_;
  std::string value_;
  const Node* parent_ = nullptr;
  std::vector<const Node*> children_;
  std::vector<const Node*> attributes_;
  std::size_t sibling_index_ = 0;
  std::size_t order_ = 0;
};

// Owns every node of one tree. Movable, not copyable; node addresses stay
// valid across moves.
class Document {
 public:
  Document();
  Document(Document&&) = default;
  Document& operator=(Document&&) = default;
  Document(const Document&) = delete;
  Document& operator=(const Document&) = delete;

  const Node& document_node() const { return nodes_.front(); }
  // The single root element.
  const Node& root() const { return *nodes_.front().children_.front(); }

  std::size_t size() const noexcept { return nodes_.size(); }

  // Deep-copies `element` and its subtree into a fresh document whose root is
  // the copy.
  static Document copy_of(const Node& element);

 private:
  friend class Parser;

  Node& make_node(NodeKind kind, Node* parent);
  void append_child(Node& parent, Node& child);
  void append_attribute(Node& element, Node& attr);
  Node* copy_subtree(const Node& source, Node& parent);

  std::deque<Node> nodes_;
};

// Parses the supported XML subset: elements, attributes, text, comments, the
// five predefined entities and numeric character references. An optional
// leading `<?xml ...?>` declaration and UTF-8 byte-order mark are skipped.
//
// Text consisting only of whitespace is dropped when its parent element also
// has element children; all other text is kept verbatim. Adjacent text runs
// (e.g. split by a comment) are merged.
//
// Throws SyntaxError carrying a 1-based line and column.
Document parse(std::string_view input);

// Concatenation of all descendant text in document order. For text and
// attribute nodes this is their value.
std::string string_value(const Node& node);

// Compact serialization (no added whitespace) of an element subtree, with
// markup characters escaped. Re-parsing yields a structurally equal tree.
std::string serialize(const Node& element);

// Structural equality: names, attributes in order, and children.
bool structurally_equal(const Node& a, const Node& b);

}  // namespace xpl::xml
