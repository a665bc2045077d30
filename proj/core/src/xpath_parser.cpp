#include <array>
#include <charconv>
#include <utility>

#include "xpl/errors.hpp"
#include "xpl/xpath.hpp"

namespace xpl::xpath {

namespace {

constexpr std::array<std::pair<std::string_view, Axis>, 9> kAxes = {{
    {"child", Axis::child},
    {"descendant", Axis::descendant},
    {"descendant-or-self", Axis::descendant_or_self},
    {"parent", Axis::parent},
    {"ancestor", Axis::ancestor},
    {"self", Axis::self},
    {"attribute", Axis::attribute},
    {"following-sibling", Axis::following_sibling},
    {"preceding-sibling", Axis::preceding_sibling},
}};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

bool is_name_start(char c) {
  auto u = static_cast<unsigned char>(c);
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || u >= 0x80;
}

bool is_name_char(char c) {
  return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

class FilterParser {
 public:
  explicit FilterParser(std::string_view text) : in_(text) {}

  FilterPtr parse_all() {
    FilterPtr f = parse_or();
    skip_space();
    if (!eof()) fail("unexpected '" + std::string(1, peek()) + "'");
    return f;
  }

  LocationPath parse_path_only() {
    skip_space();
    LocationPath path = parse_path();
    skip_space();
    if (!eof()) fail("unexpected '" + std::string(1, peek()) + "'");
    return path;
  }

 private:
  bool eof() const { return pos_ >= in_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < in_.size() ? in_[pos_ + ahead] : '\0';
  }

  void skip_space() {
    while (!eof() && is_space(peek())) ++pos_;
  }

  [[noreturn]] void fail(const std::string& message) const { fail_at(message, pos_); }
  [[noreturn]] void fail_at(const std::string& message, std::size_t offset) const {
    throw SyntaxError(message, 1, offset + 1);
  }

  void expect(char c) {
    skip_space();
    if (peek() != c) {
      if (eof()) fail(std::string("expected '") + c + "' before end of input");
      fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  // Name at the current position without consuming it.
  std::string_view peek_name() const {
    if (eof() || !is_name_start(peek())) return {};
    std::size_t end = pos_;
    while (end < in_.size() && is_name_char(in_[end])) ++end;
    return in_.substr(pos_, end - pos_);
  }

  // True when the name `word` sits at the current position and is followed
  // (after optional space) by `next`.
  bool keyword_followed_by(std::string_view word, char next) const {
    if (peek_name() != word) return false;
    std::size_t p = pos_ + word.size();
    while (p < in_.size() && is_space(in_[p])) ++p;
    return p < in_.size() && in_[p] == next;
  }

  bool accept_keyword(std::string_view word) {
    skip_space();
    if (peek_name() != word) return false;
    pos_ += word.size();
    return true;
  }

  FilterPtr parse_or() {
    FilterPtr lhs = parse_and();
    while (accept_keyword("or")) lhs = make_or(lhs, parse_and());
    return lhs;
  }

  FilterPtr parse_and() {
    FilterPtr lhs = parse_not();
    while (accept_keyword("and")) lhs = make_and(lhs, parse_not());
    return lhs;
  }

  FilterPtr parse_not() {
    skip_space();
    if (keyword_followed_by("not", '(')) {
      pos_ += 3;
      expect('(');
      FilterPtr inner = parse_or();
      expect(')');
      return make_not(inner);
    }
    return parse_cmp();
  }

  FilterPtr parse_cmp() {
    skip_space();
    if (eof()) fail("expected an expression");
    if (peek() == '(') {
      std::size_t open = pos_++;
      FilterPtr inner = parse_or();
      skip_space();
      if (peek() != ')') fail_at("unbalanced '('", open);
      ++pos_;
      return inner;
    }
    Operand lhs = parse_operand();
    skip_space();
    CompareOp op;
    if (!accept_compare_op(op)) return make_test(std::move(lhs));
    skip_space();
    Operand rhs = parse_operand();
    return make_comparison(std::move(lhs), op, std::move(rhs));
  }

  bool accept_compare_op(CompareOp& op) {
    char c = peek();
    char d = peek(1);
    if (c == '=') {
      op = CompareOp::eq;
      pos_ += 1;
    } else if (c == '!' && d == '=') {
      op = CompareOp::ne;
      pos_ += 2;
    } else if (c == '<' && d == '=') {
      op = CompareOp::le;
      pos_ += 2;
    } else if (c == '<') {
      op = CompareOp::lt;
      pos_ += 1;
    } else if (c == '>' && d == '=') {
      op = CompareOp::ge;
      pos_ += 2;
    } else if (c == '>') {
      op = CompareOp::gt;
      pos_ += 1;
    } else {
      return false;
    }
    return true;
  }

  Operand parse_operand() {
    skip_space();
    if (eof()) fail("expected an operand");
    char c = peek();
    if (c == '"' || c == '\'') return StringLiteral{parse_string()};
    if (starts_number(0) || (c == '-' && starts_number(1))) return NumberLiteral{parse_number()};
    if (keyword_followed_by("count", '(')) {
      pos_ += 5;
      expect('(');
      skip_space();
      LocationPath path = parse_path();
      expect(')');
      return CountOf{std::move(path)};
    }
    if (keyword_followed_by("contains", '(')) {
      pos_ += 8;
      expect('(');
      skip_space();
      LocationPath path = parse_path();
      expect(',');
      skip_space();
      if (peek() != '"' && peek() != '\'') fail("contains() expects a string literal");
      std::string needle = parse_string();
      expect(')');
      return ContainsOf{std::move(path), std::move(needle)};
    }
    if (is_name_start(c) && keyword_followed_by(peek_name(), '(') && peek_name() != "text") {
      fail("unknown function '" + std::string(peek_name()) + "'");
    }
    return parse_path();
  }

  std::string parse_string() {
    char quote = peek();
    std::size_t start = pos_++;
    std::size_t end = in_.find(quote, pos_);
    if (end == std::string_view::npos) fail_at("unterminated string literal", start);
    std::string value(in_.substr(pos_, end - pos_));
    pos_ = end + 1;
    return value;
  }

  bool starts_number(std::size_t ahead) const {
    return is_digit(peek(ahead)) || (peek(ahead) == '.' && is_digit(peek(ahead + 1)));
  }

  double parse_number() {
    std::size_t start = pos_;
    if (peek() == '-') ++pos_;
    while (is_digit(peek())) ++pos_;
    if (peek() == '.') {
      ++pos_;
      while (is_digit(peek())) ++pos_;
    }
    if (is_name_start(peek()) || peek() == '.') fail_at("malformed number", start);
    double value = 0;
    if (!parse_decimal(in_.substr(start, pos_ - start), value)) fail_at("malformed number", start);
    return value;
  }

  static Step descendant_or_self_step() {
    Step step;
    step.axis = Axis::descendant_or_self;
    step.test.kind = NodeTest::Kind::any_node;
    return step;
  }

  LocationPath parse_path() {
    LocationPath path;
    if (peek() == '/' && peek(1) == '/') {
      path.absolute = true;
      pos_ += 2;
      path.steps.push_back(descendant_or_self_step());
    } else if (peek() == '/') {
      fail("absolute paths must start with '//'");
    }
    path.steps.push_back(parse_step());
    for (;;) {
      std::size_t save = pos_;
      skip_space();
      if (peek() == '/' && peek(1) == '/') {
        pos_ += 2;
        path.steps.push_back(descendant_or_self_step());
      } else if (peek() == '/') {
        pos_ += 1;
      } else {
        pos_ = save;
        return path;
      }
      skip_space();
      path.steps.push_back(parse_step());
    }
  }

  Step parse_step() {
    Step step;
    if (eof()) fail("expected a location step");
    if (peek() == '.' && peek(1) == '.') {
      pos_ += 2;
      step.axis = Axis::parent;
      step.test.kind = NodeTest::Kind::any_node;
      return step;
    }
    if (peek() == '.' && !is_name_char(peek(1))) {
      pos_ += 1;
      step.axis = Axis::self;
      step.test.kind = NodeTest::Kind::any_node;
      return step;
    }
    if (peek() == '@') {
      ++pos_;
      step.axis = Axis::attribute;
      if (peek() == '*') {
        ++pos_;
        step.test.kind = NodeTest::Kind::any;
      } else {
        std::string_view name = peek_name();
        if (name.empty()) fail("expected attribute name after '@'");
        step.test = {NodeTest::Kind::name, std::string(name)};
        pos_ += name.size();
      }
      parse_predicates(step);
      return step;
    }
    std::string_view name = peek_name();
    if (!name.empty() && peek(name.size()) == ':' && peek(name.size() + 1) == ':') {
      bool found = false;
      for (const auto& [axis_text, axis] : kAxes) {
        if (axis_text == name) {
          step.axis = axis;
          found = true;
        }
      }
      if (!found) fail("unknown axis '" + std::string(name) + "'");
      pos_ += name.size() + 2;
    }
    parse_node_test(step.test);
    parse_predicates(step);
    return step;
  }

  void parse_node_test(NodeTest& test) {
    if (peek() == '*') {
      ++pos_;
      test.kind = NodeTest::Kind::any;
      return;
    }
    std::string_view name = peek_name();
    if (name.empty()) {
      if (eof()) fail("expected a node test before end of input");
      fail("expected a node test");
    }
    if (keyword_followed_by("text", '(')) {
      pos_ += 4;
      expect('(');
      expect(')');
      test.kind = NodeTest::Kind::text;
      return;
    }
    pos_ += name.size();
    test = {NodeTest::Kind::name, std::string(name)};
  }

  void parse_predicates(Step& step) {
    for (;;) {
      std::size_t save = pos_;
      skip_space();
      if (peek() != '[') {
        pos_ = save;
        return;
      }
      std::size_t open = pos_++;
      step.predicates.push_back(parse_or());
      skip_space();
      if (peek() != ']') fail_at("unbalanced '['", open);
      ++pos_;
    }
  }

  std::string_view in_;
  std::size_t pos_ = 0;
};

std::string number_text(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string quote(const std::string& s) {
  char q = s.find('"') == std::string::npos ? '"' : '\'';
  return q + s + q;
}

std::string operand_text(const Operand& operand) {
  struct Visitor {
    std::string operator()(const LocationPath& p) const { return to_string(p); }
    std::string operator()(const StringLiteral& s) const { return quote(s.value); }
    std::string operator()(const NumberLiteral& n) const { return number_text(n.value); }
    std::string operator()(const CountOf& c) const { return "count(" + to_string(c.path) + ")"; }
    std::string operator()(const ContainsOf& c) const {
      return "contains(" + to_string(c.path) + ", " + quote(c.needle) + ")";
    }
  };
  return std::visit(Visitor{}, operand);
}

}  // namespace

std::string_view axis_name(Axis axis) {
  for (const auto& [text, a] : kAxes) {
    if (a == axis) return text;
  }
  return "?";
}

std::string_view compare_op_symbol(CompareOp op) {
  switch (op) {
    case CompareOp::eq: return "=";
    case CompareOp::ne: return "!=";
    case CompareOp::lt: return "<";
    case CompareOp::le: return "<=";
    case CompareOp::gt: return ">";
    case CompareOp::ge: return ">=";
  }
  return "?";
}

FilterPtr make_and(FilterPtr lhs, FilterPtr rhs) {
  return std::make_shared<const Filter>(Filter{Filter::And{std::move(lhs), std::move(rhs)}});
}
FilterPtr make_or(FilterPtr lhs, FilterPtr rhs) {
  return std::make_shared<const Filter>(Filter{Filter::Or{std::move(lhs), std::move(rhs)}});
}
FilterPtr make_not(FilterPtr operand) {
  return std::make_shared<const Filter>(Filter{Filter::Not{std::move(operand)}});
}
FilterPtr make_comparison(Operand lhs, CompareOp op, Operand rhs) {
  return std::make_shared<const Filter>(
      Filter{Filter::Comparison{std::move(lhs), op, std::move(rhs)}});
}
FilterPtr make_test(Operand operand) {
  return std::make_shared<const Filter>(Filter{Filter::Test{std::move(operand)}});
}

FilterPtr parse_filter(std::string_view text) { return FilterParser(text).parse_all(); }

LocationPath parse_path(std::string_view text) { return FilterParser(text).parse_path_only(); }

bool parse_decimal(std::string_view text, double& out) {
  std::size_t b = 0;
  std::size_t e = text.size();
  while (b < e && is_space(text[b])) ++b;
  while (e > b && is_space(text[e - 1])) --e;
  text = text.substr(b, e - b);
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  std::size_t digits = 0;
  while (i < text.size() && is_digit(text[i])) ++i, ++digits;
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && is_digit(text[i])) ++i, ++digits;
  }
  if (digits == 0 || i != text.size()) return false;
  std::string_view body = text[0] == '+' ? text.substr(1) : text;
  auto res = std::from_chars(body.data(), body.data() + body.size(), out, std::chars_format::fixed);
  return res.ec == std::errc() && res.ptr == body.data() + body.size();
}

std::string to_string(const LocationPath& path) {
  std::string out = path.absolute ? "/" : "";
  for (std::size_t i = 0; i < path.steps.size(); ++i) {
    const Step& step = path.steps[i];
    if (i > 0) out += '/';
    out += axis_name(step.axis);
    out += "::";
    switch (step.test.kind) {
      case NodeTest::Kind::name: out += step.test.name; break;
      case NodeTest::Kind::any: out += '*'; break;
      case NodeTest::Kind::text: out += "text()"; break;
      case NodeTest::Kind::any_node: out += "node()"; break;
    }
    for (const FilterPtr& pred : step.predicates) out += "[" + to_string(*pred) + "]";
  }
  return out;
}

std::string to_string(const Filter& filter) {
  struct Visitor {
    std::string operator()(const Filter::And& f) const {
      return "(" + to_string(*f.lhs) + " and " + to_string(*f.rhs) + ")";
    }
    std::string operator()(const Filter::Or& f) const {
      return "(" + to_string(*f.lhs) + " or " + to_string(*f.rhs) + ")";
    }
    std::string operator()(const Filter::Not& f) const { return "not(" + to_string(*f.operand) + ")"; }
    std::string operator()(const Filter::Comparison& f) const {
      return "(" + operand_text(f.lhs) + " " + std::string(compare_op_symbol(f.op)) + " " +
             operand_text(f.rhs) + ")";
    }
    std::string operator()(const Filter::Test& f) const { return operand_text(f.operand); }
  };
  return std::visit(Visitor{}, filter.node);
}

bool structurally_equal(const Filter& a, const Filter& b) { return to_string(a) == to_string(b); }

}  // namespace xpl::xpath
