#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "xpl/xml.hpp"

// Navigational XPath: location paths over the axes below, name/`*`/`text()`
// tests, predicates, comparisons, and the `count` and `contains` functions.
namespace xpl::xpath {

enum class Axis : std::uint8_t {
  child,
  descendant,
  descendant_or_self,
  parent,
  ancestor,
  self,
  attribute,
  following_sibling,
  preceding_sibling,
};

std::string_view axis_name(Axis axis);

struct NodeTest {
  enum class Kind : std::uint8_t {
    name,     // element (or attribute, on the attribute axis) with this name
    any,      // `*`: any element, or any attribute on the attribute axis
    text,     // `text()`
    any_node  // node(): only produced by the `.` and `..` abbreviations
  };
  Kind kind = Kind::any;
  std::string name;
};

struct Filter;
using FilterPtr = std::shared_ptr<const Filter>;

struct Step {
  Axis axis = Axis::child;
  NodeTest test;
  std::vector<FilterPtr> predicates;
};

struct LocationPath {
  // True for paths written with a leading `//`, evaluated from the document
  // root instead of the context item.
  bool absolute = false;
  std::vector<Step> steps;
};

struct StringLiteral {
  std::string value;
};
struct NumberLiteral {
  double value = 0;
};
struct CountOf {
  LocationPath path;
};
struct ContainsOf {
  LocationPath path;
  std::string needle;
};

using Operand = std::variant<LocationPath, StringLiteral, NumberLiteral, CountOf, ContainsOf>;

enum class CompareOp : std::uint8_t { eq, ne, lt, le, gt, ge };

std::string_view compare_op_symbol(CompareOp op);

struct Filter {
  struct And {
    FilterPtr lhs, rhs;
  };
  struct Or {
    FilterPtr lhs, rhs;
  };
  struct Not {
    FilterPtr operand;
  };
  struct Comparison {
    Operand lhs;
    CompareOp op;
    Operand rhs;
  };
  // An operand used as a boolean: a path is true iff nonempty, count(p) iff
  // nonzero, a string iff nonempty, a number iff nonzero.
  struct Test {
    Operand operand;
  };

  std::variant<And, Or, Not, Comparison, Test> node;
};

FilterPtr make_and(FilterPtr lhs, FilterPtr rhs);
FilterPtr make_or(FilterPtr lhs, FilterPtr rhs);
FilterPtr make_not(FilterPtr operand);
FilterPtr make_comparison(Operand lhs, CompareOp op, Operand rhs);
FilterPtr make_test(Operand operand);

// Parses a filter expression. Precedence, loosest first: or, and, not,
// comparison; parentheses group. Throws SyntaxError with a 1-based column.
FilterPtr parse_filter(std::string_view text);

// Parses a bare location path (no surrounding filter syntax).
LocationPath parse_path(std::string_view text);

// Canonical, fully parenthesized rendering with explicit axes. Two filters
// are structurally equal iff their canonical strings are equal.
std::string to_string(const Filter& filter);
std::string to_string(const LocationPath& path);

bool structurally_equal(const Filter& a, const Filter& b);

// Items reached by `path` from `context`, duplicate-free and in document
// order.
std::vector<const xml::Node*> eval_path(const LocationPath& path, const xml::Node& context);

// Boolean value of `filter` at `context`. Throws TypeError when a numeric
// comparison meets a value that is not a decimal number.
bool eval_filter(const Filter& filter, const xml::Node& context);

// Trimmed decimal parse used for numeric coercion: optional sign, digits,
// optional fraction. Returns false on anything else.
bool parse_decimal(std::string_view text, double& out);

}  // namespace xpl::xpath
