#include "xpl/xml.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <utility>

#include "xpl/errors.hpp"

namespace xpl::xml {

std::optional<std::string_view> Node::attribute(std::string_view attr_name) const {
  for (const Node* attr : attributes_) {
    if (attr->name_ == attr_name) return std::string_view(attr->value_);
  }
  return std::nullopt;
}

const Node* Node::child_element(std::string_view child_name) const {
  for (const Node* child : children_) {
    if (child->is_element() && child->name_ == child_name) return child;
  }
  return nullptr;
}

Document::Document() {
  Node& doc = nodes_.emplace_back();
  doc.kind_ = NodeKind::document;
}

Node& Document::make_node(NodeKind kind, Node* parent) {
  Node& node = nodes_.emplace_back();
  node.kind_ = kind;
  node.parent_ = parent;
  node.order_ = nodes_.size() - 1;
  return node;
}

void Document::append_child(Node& parent, Node& child) {
  child.sibling_index_ = parent.children_.size();
  parent.children_.push_back(&child);
}

void Document::append_attribute(Node& element, Node& attr) {
  attr.sibling_index_ = element.attributes_.size();
  element.attributes_.push_back(&attr);
}

Node* Document::copy_subtree(const Node& source, Node& parent) {
  Node& copy = make_node(source.kind_, &parent);
  copy.name_ = source.name_;
  copy.value_ = source.value_;
  append_child(parent, copy);
  for (const Node* attr : source.attributes_) {
    Node& a = make_node(NodeKind::attribute, &copy);
    a.name_ = attr->name_;
    a.value_ = attr->value_;
    append_attribute(copy, a);
  }
  for (const Node* child : source.children_) copy_subtree(*child, copy);
  return &copy;
}

Document Document::copy_of(const Node& element) {
  Document doc;
  doc.copy_subtree(element, doc.nodes_.front());
  return doc;
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

bool is_name_start(char c) {
  auto u = static_cast<unsigned char>(c);
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || u >= 0x80;
}

bool is_name_char(char c) {
  return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
}

bool all_space(std::string_view s) { return std::all_of(s.begin(), s.end(), is_space); }

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

}  // namespace

class Parser {
 public:
  explicit Parser(std::string_view input) : in_(input) {}

  Document run() {
    if (in_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
    if (in_.substr(pos_, 5) == "<?xml" && pos_ + 5 < in_.size() && is_space(in_[pos_ + 5])) {
      std::size_t end = in_.find("?>", pos_);
      if (end == std::string_view::npos) fail("unterminated XML declaration");
      pos_ = end + 2;
    }
    skip_misc();
    if (eof()) fail("document has no root element");
    if (peek() != '<') fail("text outside the root element");
    parse_root();
    skip_misc();
    if (!eof()) {
      if (peek() == '<') fail("multiple root elements");
      fail("text outside the root element");
    }
    return std::move(doc_);
  }

 private:
  struct Open {
    Node* element;
    std::size_t start;  // offset of '<' for diagnostics
  };

  bool eof() const { return pos_ >= in_.size(); }
  char peek() const { return in_[pos_]; }
  bool starts_with(std::string_view s) const { return in_.substr(pos_, s.size()) == s; }

  [[noreturn]] void fail(const std::string& message) const { fail_at(message, pos_); }

  [[noreturn]] void fail_at(const std::string& message, std::size_t offset) const {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < offset && i < in_.size(); ++i) {
      if (in_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw SyntaxError(message, line, column);
  }

  // Whitespace and comments before or after the root element.
  void skip_misc() {
    for (;;) {
      while (!eof() && is_space(peek())) ++pos_;
      if (starts_with("<!--")) {
        skip_comment();
      } else {
        return;
      }
    }
  }

  void skip_comment() {
    std::size_t start = pos_;
    std::size_t end = in_.find("-->", pos_ + 4);
    if (end == std::string_view::npos) fail_at("unterminated comment", start);
    pos_ = end + 3;
  }

  std::string parse_name(const char* what) {
    if (eof() || !is_name_start(peek())) fail(std::string("expected ") + what);
    std::size_t start = pos_;
    while (!eof() && is_name_char(peek())) ++pos_;
    return std::string(in_.substr(start, pos_ - start));
  }

  void skip_space() {
    while (!eof() && is_space(peek())) ++pos_;
  }

  // Decodes the reference starting at '&' and appends it to `out`.
  void parse_reference(std::string& out) {
    std::size_t start = pos_;
    std::size_t end = in_.find(';', pos_);
    if (end == std::string_view::npos || end - pos_ > 12) fail_at("unterminated entity reference", start);
    std::string_view ref = in_.substr(pos_ + 1, end - pos_ - 1);
    if (ref == "amp") {
      out += '&';
    } else if (ref == "lt") {
      out += '<';
    } else if (ref == "gt") {
      out += '>';
    } else if (ref == "quot") {
      out += '"';
    } else if (ref == "apos") {
      out += '\'';
    } else if (ref.size() > 1 && ref[0] == '#') {
      bool hex = ref[1] == 'x';
      std::string_view digits = ref.substr(hex ? 2 : 1);
      if (digits.empty()) fail_at("malformed character reference", start);
      std::uint32_t cp = 0;
      for (char c : digits) {
        int d;
        if (c >= '0' && c <= '9') {
          d = c - '0';
        } else if (hex && c >= 'a' && c <= 'f') {
          d = c - 'a' + 10;
        } else if (hex && c >= 'A' && c <= 'F') {
          d = c - 'A' + 10;
        } else {
          fail_at("malformed character reference", start);
        }
        cp = cp * (hex ? 16 : 10) + static_cast<std::uint32_t>(d);
        if (cp > 0x10FFFF) fail_at("character reference out of range", start);
      }
      if (cp == 0) fail_at("character reference out of range", start);
      append_utf8(out, cp);
    } else {
      fail_at("unknown entity '&" + std::string(ref) + ";'", start);
    }
    pos_ = end + 1;
  }

  std::string parse_attribute_value() {
    if (eof() || (peek() != '"' && peek() != '\'')) fail("expected quoted attribute value");
    char quote = peek();
    std::size_t start = pos_++;
    std::string value;
    for (;;) {
      if (eof()) fail_at("unterminated attribute value", start);
      char c = peek();
      if (c == quote) {
        ++pos_;
        return value;
      }
      if (c == '<') fail("'<' in attribute value");
      if (c == '&') {
        parse_reference(value);
      } else {
        value += is_space(c) ? ' ' : c;
        ++pos_;
      }
    }
  }

  // Parses `<name attr="v" ...` up to and including '>' or '/>'. Returns true
  // when the tag was self-closing.
  bool parse_start_tag(Node& element) {
    ++pos_;  // '<'
    element.name_ = parse_name("element name");
    for (;;) {
      bool had_space = !eof() && is_space(peek());
      skip_space();
      if (eof()) fail("unterminated start tag");
      if (peek() == '>') {
        ++pos_;
        return false;
      }
      if (starts_with("/>")) {
        pos_ += 2;
        return true;
      }
      if (!had_space) fail("expected whitespace before attribute");
      std::size_t attr_start = pos_;
      std::string name = parse_name("attribute name");
      skip_space();
      if (eof() || peek() != '=') fail("expected '=' after attribute name");
      ++pos_;
      skip_space();
      std::string value = parse_attribute_value();
      if (element.attribute(name)) fail_at("duplicate attribute '" + name + "'", attr_start);
      Node& attr = doc_.make_node(NodeKind::attribute, &element);
      attr.name_ = std::move(name);
      attr.value_ = std::move(value);
      doc_.append_attribute(element, attr);
    }
  }

  void flush_text(Node& parent, std::string& text, bool element_follows) {
    if (text.empty()) return;
    bool has_elements = element_follows ||
        std::any_of(parent.children_.begin(), parent.children_.end(),
                    [](const Node* c) { return c->is_element(); });
    if (!(has_elements && all_space(text))) {
      Node& t = doc_.make_node(NodeKind::text, &parent);
      t.value_ = std::move(text);
      doc_.append_child(parent, t);
    }
    text.clear();
  }

  void parse_root() {
    std::vector<Open> stack;
    std::string text;

    Node& root = doc_.make_node(NodeKind::element, &doc_.nodes_.front());
    doc_.append_child(doc_.nodes_.front(), root);
    std::size_t root_start = pos_;
    if (parse_start_tag(root)) return;
    stack.push_back({&root, root_start});

    while (!stack.empty()) {
      if (eof()) fail_at("unclosed element <" + stack.back().element->name_ + ">", stack.back().start);
      Node& current = *stack.back().element;
      char c = peek();
      if (c == '<') {
        if (starts_with("<!--")) {
          skip_comment();
        } else if (starts_with("</")) {
          flush_text(current, text, false);
          std::size_t start = pos_;
          pos_ += 2;
          std::string name = parse_name("element name");
          skip_space();
          if (eof() || peek() != '>') fail("expected '>' to close end tag");
          ++pos_;
          if (name != current.name_) {
            fail_at("mismatched end tag </" + name + ">, expected </" + current.name_ + ">", start);
          }
          stack.pop_back();
        } else if (starts_with("<![CDATA[")) {
          fail("CDATA sections are not supported");
        } else if (starts_with("<!")) {
          fail("document type declarations are not supported");
        } else if (starts_with("<?")) {
          fail("processing instructions are not supported");
        } else {
          flush_text(current, text, true);
          std::size_t start = pos_;
          Node& child = doc_.make_node(NodeKind::element, &current);
          doc_.append_child(current, child);
          if (!parse_start_tag(child)) stack.push_back({&child, start});
        }
      } else if (c == '&') {
        parse_reference(text);
      } else {
        text += c;
        ++pos_;
      }
    }
  }

  std::string_view in_;
  std::size_t pos_ = 0;
  Document doc_;
};

Document parse(std::string_view input) { return Parser(input).run(); }

namespace {

void collect_text(const Node& node, std::string& out) {
  if (node.is_text() || node.is_attribute()) {
    out += node.value();
    return;
  }
  for (const Node* child : node.children()) collect_text(*child, out);
}

void escape(std::string_view s, std::string& out, bool in_attribute) {
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"':
        if (in_attribute) {
          out += "&quot;";
        } else {
          out += c;
        }
        break;
      case '\n':
      case '\t':
      case '\r':
        if (in_attribute) {
          out += "&#" + std::to_string(static_cast<int>(c)) + ";";
        } else {
          out += c;
        }
        break;
      default: out += c;
    }
  }
}

void write(const Node& node, std::string& out) {
  if (node.is_text()) {
    escape(node.value(), out, false);
    return;
  }
  out += '<';
  out += node.name();
  for (const Node* attr : node.attributes()) {
    out += ' ';
    out += attr->name();
    out += "=\"";
    escape(attr->value(), out, true);
    out += '"';
  }
  if (node.children().empty()) {
    out += "/>";
    return;
  }
  out += '>';
  for (const Node* child : node.children()) write(*child, out);
  out += "</";
  out += node.name();
  out += '>';
}

}  // namespace

std::string string_value(const Node& node) {
  if (node.is_text() || node.is_attribute()) return node.value();
  std::string out;
  collect_text(node, out);
  return out;
}

std::string serialize(const Node& element) {
  std::string out;
  write(element, out);
  return out;
}

bool structurally_equal(const Node& a, const Node& b) {
  if (a.kind() != b.kind() || a.name() != b.name() || a.value() != b.value()) return false;
  if (a.attributes().size() != b.attributes().size() || a.children().size() != b.children().size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.attributes().size(); ++i) {
    if (!structurally_equal(*a.attributes()[i], *b.attributes()[i])) return false;
  }
  for (std::size_t i = 0; i < a.children().size(); ++i) {
    if (!structurally_equal(*a.children()[i], *b.children()[i])) return false;
  }
  return true;
}

}  // namespace xpl::xml
