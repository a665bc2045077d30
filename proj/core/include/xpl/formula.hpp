#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace xpl {

// Operator alphabet shared by CTL and XPL formulas. The `i*` forms are the
// inverse quantifiers, which walk edges backwards.
enum class Op : std::uint8_t {
  truth,
  falsity,
  atom,
  negation,
  conjunction,
  disjunction,
  ex, ax, ef, af, eg, ag, eu, au,
  iex, iax, ief, iaf, ieg, iag, ieu, iau,
};

constexpr int arity(Op op) {
  switch (op) {
    case Op::truth:
    case Op::falsity:
    case Op::atom: return 0;
    case Op::conjunction:
    case Op::disjunction:
    case Op::eu:
    case Op::au:
    case Op::ieu:
    case Op::iau: return 2;
    default: return 1;
  }
}

constexpr bool is_temporal(Op op) { return op >= Op::ex; }
constexpr bool is_inverse(Op op) { return op >= Op::iex; }

// Maps an inverse quantifier to its forward counterpart; other operators are
// returned unchanged.
constexpr Op forward_of(Op op) {
  if (!is_inverse(op)) return op;
  return static_cast<Op>(static_cast<int>(op) - static_cast<int>(Op::iex) + static_cast<int>(Op::ex));
}

constexpr Op inverse_of(Op op) {
  if (!is_temporal(op) || is_inverse(op)) return op;
  return static_cast<Op>(static_cast<int>(op) - static_cast<int>(Op::ex) + static_cast<int>(Op::iex));
}

// Surface keyword of a quantifier ("EX", "IAU", ...), or "" for the rest.
constexpr std::string_view quantifier_keyword(Op op) {
  constexpr std::string_view kKeywords[] = {"EX",  "AX",  "EF",  "AF",  "EG",  "AG",  "EU",  "AU",
                                            "IEX", "IAX", "IEF", "IAF", "IEG", "IAG", "IEU", "IAU"};
  if (!is_temporal(op)) return {};
  return kKeywords[static_cast<int>(op) - static_cast<int>(Op::ex)];
}

// Immutable formula tree with cheap copies; subtrees are shared.
template <typename Atom>
class Formula {
 public:
  static Formula truth() { return Formula(make(Op::truth, std::nullopt, {}, {})); }
  static Formula falsity() { return Formula(make(Op::falsity, std::nullopt, {}, {})); }
  static Formula atom(Atom a) { return Formula(make(Op::atom, std::move(a), {}, {})); }

  static Formula unary(Op op, const Formula& arg) {
    if (arity(op) != 1) throw std::invalid_argument("operator is not unary");
    return Formula(make(op, std::nullopt, arg.node_, {}));
  }
  static Formula binary(Op op, const Formula& lhs, const Formula& rhs) {
    if (arity(op) != 2) throw std::invalid_argument("operator is not binary");
    return Formula(make(op, std::nullopt, lhs.node_, rhs.node_));
  }

  Op op() const { return node_->op; }
  const Atom& atom_value() const { return *node_->atom; }
  // First argument (the only one for unary operators).
  Formula lhs() const { return Formula(node_->lhs); }
  Formula rhs() const { return Formula(node_->rhs); }

  // Number of operator and atom occurrences in the tree.
  std::size_t length() const { return node_->length; }

  // Identity of the shared node, usable as a cache key.
  const void* identity() const { return node_.get(); }

 private:
  struct Node {
    Op op;
    std::optional<Atom> atom;
    std::shared_ptr<const Node> lhs, rhs;
    std::size_t length;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static std::shared_ptr<const Node> make(Op op, std::optional<Atom> a, std::shared_ptr<const Node> lhs,
                                          std::shared_ptr<const Node> rhs) {
    std::size_t length = 1 + (lhs ? lhs->length : 0) + (rhs ? rhs->length : 0);
    return std::make_shared<const Node>(Node{op, std::move(a), std::move(lhs), std::move(rhs), length});
  }

  std::shared_ptr<const Node> node_;
};

// Renders a formula in the XPL surface syntax, fully parenthesizing binary
// connectives. `print_atom` turns an atom into text.
template <typename Atom, typename AtomPrinter>
std::string render(const Formula<Atom>& f, AtomPrinter&& print_atom) {
  switch (f.op()) {
    case Op::truth: return "true";
    case Op::falsity: return "false";
    case Op::atom: return print_atom(f.atom_value());
    case Op::negation: return "!" + render(f.lhs(), print_atom);
    case Op::conjunction:
      return "(" + render(f.lhs(), print_atom) + " & " + render(f.rhs(), print_atom) + ")";
    case Op::disjunction:
      return "(" + render(f.lhs(), print_atom) + " | " + render(f.rhs(), print_atom) + ")";
    default: break;
  }
  std::string out(quantifier_keyword(f.op()));
  if (arity(f.op()) == 2) {
    return out + "(" + render(f.lhs(), print_atom) + ", " + render(f.rhs(), print_atom) + ")";
  }
  return out + " " + render(f.lhs(), print_atom);
}

// Rebuilds `f` with every atom replaced by `map_atom(atom)`.
template <typename To, typename From, typename AtomMap>
Formula<To> map_atoms(const Formula<From>& f, AtomMap&& map_atom) {
  switch (arity(f.op())) {
    case 0:
      if (f.op() == Op::truth) return Formula<To>::truth();
      if (f.op() == Op::falsity) return Formula<To>::falsity();
      return Formula<To>::atom(map_atom(f.atom_value()));
    case 1: return Formula<To>::unary(f.op(), map_atoms<To>(f.lhs(), map_atom));
    default:
      return Formula<To>::binary(f.op(), map_atoms<To>(f.lhs(), map_atom),
                                 map_atoms<To>(f.rhs(), map_atom));
  }
}

}  // namespace xpl
