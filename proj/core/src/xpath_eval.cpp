#include <algorithm>
#include <utility>

#include "xpl/errors.hpp"
#include "xpl/xpath.hpp"

namespace xpl::xpath {

namespace {

using Items = std::vector<const xml::Node*>;

void push_descendants(const xml::Node& node, Items& out) {
  // Iterative pre-order walk; payloads can nest deeply.
  std::vector<const xml::Node*> stack;
  for (auto it = node.children().rbegin(); it != node.children().rend(); ++it) stack.push_back(*it);
  while (!stack.empty()) {
    const xml::Node* n = stack.back();
    stack.pop_back();
    out.push_back(n);
    for (auto it = n->children().rbegin(); it != n->children().rend(); ++it) stack.push_back(*it);
  }
}

void traverse(Axis axis, const xml::Node& ctx, Items& out) {
  switch (axis) {
    case Axis::child:
      out.insert(out.end(), ctx.children().begin(), ctx.children().end());
      break;
    case Axis::descendant:
      push_descendants(ctx, out);
      break;
    case Axis::descendant_or_self:
      out.push_back(&ctx);
      push_descendants(ctx, out);
      break;
    case Axis::parent:
      if (ctx.parent()) out.push_back(ctx.parent());
      break;
    case Axis::ancestor:
      for (const xml::Node* p = ctx.parent(); p; p = p->parent()) out.push_back(p);
      break;
    case Axis::self:
      out.push_back(&ctx);
      break;
    case Axis::attribute:
      out.insert(out.end(), ctx.attributes().begin(), ctx.attributes().end());
      break;
    case Axis::following_sibling:
    case Axis::preceding_sibling: {
      if (ctx.is_attribute() || !ctx.parent()) break;
      auto siblings = ctx.parent()->children();
      std::size_t at = ctx.sibling_index();
      if (axis == Axis::following_sibling) {
        for (std::size_t i = at + 1; i < siblings.size(); ++i) out.push_back(siblings[i]);
      } else {
        for (std::size_t i = 0; i < at; ++i) out.push_back(siblings[i]);
      }
      break;
    }
  }
}

bool matches(const NodeTest& test, Axis axis, const xml::Node& node) {
  // The principal node kind of the attribute axis is attribute; of every
  // other axis, element.
  bool principal = axis == Axis::attribute ? node.is_attribute() : node.is_element();
  switch (test.kind) {
    case NodeTest::Kind::name: return principal && node.name() == test.name;
    case NodeTest::Kind::any: return principal;
    case NodeTest::Kind::text: return node.is_text();
    case NodeTest::Kind::any_node: return true;
  }
  return false;
}

void sort_document_order(Items& items) {
  std::sort(items.begin(), items.end(),
            [](const xml::Node* a, const xml::Node* b) { return a->order() < b->order(); });
  items.erase(std::unique(items.begin(), items.end()), items.end());
}

// Runtime value of an operand.
struct Value {
  enum class Kind { nodes, string, number, boolean };
  Kind kind;
  Items nodes;
  std::string string;
  double number = 0;
  bool boolean = false;
  bool numeric_source = false;  // number literal or count()
};

Value evaluate(const Operand& operand, const xml::Node& ctx) {
  struct Visitor {
    const xml::Node& ctx;
    Value operator()(const LocationPath& p) const {
      return Value{Value::Kind::nodes, eval_path(p, ctx), {}, 0, false, false};
    }
    Value operator()(const StringLiteral& s) const {
      return Value{Value::Kind::string, {}, s.value, 0, false, false};
    }
    Value operator()(const NumberLiteral& n) const {
      return Value{Value::Kind::number, {}, {}, n.value, false, true};
    }
    Value operator()(const CountOf& c) const {
      auto count = static_cast<double>(eval_path(c.path, ctx).size());
      return Value{Value::Kind::number, {}, {}, count, false, true};
    }
    Value operator()(const ContainsOf& c) const {
      bool found = false;
      for (const xml::Node* item : eval_path(c.path, ctx)) {
        if (xml::string_value(*item).find(c.needle) != std::string::npos) {
          found = true;
          break;
        }
      }
      return Value{Value::Kind::boolean, {}, {}, 0, found, false};
    }
  };
  return std::visit(Visitor{ctx}, operand);
}

double coerce_number(const std::string& text) {
  double v = 0;
  if (!parse_decimal(text, v)) throw TypeError("cannot compare \"" + text + "\" as a number");
  return v;
}

// All numeric readings of a value; a node sequence yields one per item.
std::vector<double> as_numbers(const Value& v) {
  switch (v.kind) {
    case Value::Kind::nodes: {
      std::vector<double> out;
      out.reserve(v.nodes.size());
      for (const xml::Node* n : v.nodes) out.push_back(coerce_number(xml::string_value(*n)));
      return out;
    }
    case Value::Kind::string: return {coerce_number(v.string)};
    case Value::Kind::number: return {v.number};
    case Value::Kind::boolean: return {v.boolean ? 1.0 : 0.0};
  }
  return {};
}

std::vector<std::string> as_strings(const Value& v) {
  if (v.kind == Value::Kind::nodes) {
    std::vector<std::string> out;
    out.reserve(v.nodes.size());
    for (const xml::Node* n : v.nodes) out.push_back(xml::string_value(*n));
    return out;
  }
  return {v.string};
}

bool as_boolean(const Value& v) {
  switch (v.kind) {
    case Value::Kind::nodes: return !v.nodes.empty();
    case Value::Kind::string: return !v.string.empty();
    case Value::Kind::number: return v.number != 0;
    case Value::Kind::boolean: return v.boolean;
  }
  return false;
}

template <typename T>
bool apply(CompareOp op, const T& a, const T& b) {
  switch (op) {
    case CompareOp::eq: return a == b;
    case CompareOp::ne: return a != b;
    case CompareOp::lt: return a < b;
    case CompareOp::le: return a <= b;
    case CompareOp::gt: return a > b;
    case CompareOp::ge: return a >= b;
  }
  return false;
}

// Existential comparison over the cross product of readings.
template <typename T>
bool any_pair(CompareOp op, const std::vector<T>& lhs, const std::vector<T>& rhs) {
  for (const T& a : lhs) {
    for (const T& b : rhs) {
      if (apply(op, a, b)) return true;
    }
  }
  return false;
}

bool compare(const Value& lhs, CompareOp op, const Value& rhs) {
  bool relational = op != CompareOp::eq && op != CompareOp::ne;
  if (relational || lhs.numeric_source || rhs.numeric_source) {
    return any_pair(op, as_numbers(lhs), as_numbers(rhs));
  }
  if (lhs.kind == Value::Kind::boolean || rhs.kind == Value::Kind::boolean) {
    return apply(op, as_boolean(lhs), as_boolean(rhs));
  }
  return any_pair(op, as_strings(lhs), as_strings(rhs));
}

}  // namespace

std::vector<const xml::Node*> eval_path(const LocationPath& path, const xml::Node& context) {
  Items current;
  if (path.absolute) {
    const xml::Node* top = &context;
    while (top->parent()) top = top->parent();
    current.push_back(top);
  } else {
    current.push_back(&context);
  }
  Items next;
  Items reached;
  for (const Step& step : path.steps) {
    next.clear();
    for (const xml::Node* ctx : current) {
      reached.clear();
      traverse(step.axis, *ctx, reached);
      for (const xml::Node* item : reached) {
        if (!matches(step.test, step.axis, *item)) continue;
        bool keep = true;
        for (const FilterPtr& pred : step.predicates) {
          if (!eval_filter(*pred, *item)) {
            keep = false;
            break;
          }
        }
        if (keep) next.push_back(item);
      }
    }
    sort_document_order(next);
    std::swap(current, next);
    if (current.empty()) break;
  }
  return current;
}

bool eval_filter(const Filter& filter, const xml::Node& context) {
  struct Visitor {
    const xml::Node& ctx;
    bool operator()(const Filter::And& f) const {
      return eval_filter(*f.lhs, ctx) && eval_filter(*f.rhs, ctx);
    }
    bool operator()(const Filter::Or& f) const {
      return eval_filter(*f.lhs, ctx) || eval_filter(*f.rhs, ctx);
    }
    bool operator()(const Filter::Not& f) const { return !eval_filter(*f.operand, ctx); }
    bool operator()(const Filter::Comparison& f) const {
      return compare(evaluate(f.lhs, ctx), f.op, evaluate(f.rhs, ctx));
    }
    bool operator()(const Filter::Test& f) const { return as_boolean(evaluate(f.operand, ctx)); }
  };
  return std::visit(Visitor{context}, filter.node);
}

}  // namespace xpl::xpath
