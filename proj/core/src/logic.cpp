#include "xpl/logic.hpp"

#include <algorithm>
#include <exception>
#include <optional>
#include <thread>

namespace xpl::logic {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

struct Keyword {
  std::string_view text;
  Op op;
};

constexpr Keyword kQuantifiers[] = {
    {"EX", Op::ex},   {"AX", Op::ax},   {"EF", Op::ef},   {"AF", Op::af},
    {"EG", Op::eg},   {"AG", Op::ag},   {"EU", Op::eu},   {"AU", Op::au},
    {"IEX", Op::iex}, {"IAX", Op::iax}, {"IEF", Op::ief}, {"IAF", Op::iaf},
    {"IEG", Op::ieg}, {"IAG", Op::iag}, {"IEU", Op::ieu}, {"IAU", Op::iau},
};

class XplParser {
 public:
  explicit XplParser(std::string_view text) : in_(text) {}

  XplFormula parse() {
    XplFormula f = parse_or();
    skip_space();
    if (!eof()) fail("unexpected '" + std::string(1, peek()) + "'");
    return f;
  }

 private:
  bool eof() const { return pos_ >= in_.size(); }
  char peek() const { return pos_ < in_.size() ? in_[pos_] : '\0'; }
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
      if (eof()) fail(std::string("expected '") + c + "' before end of formula");
      fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  XplFormula parse_or() {
    XplFormula lhs = parse_and();
    for (;;) {
      skip_space();
      if (peek() != '|') return lhs;
      ++pos_;
      lhs = XplFormula::binary(Op::disjunction, lhs, parse_and());
    }
  }

  XplFormula parse_and() {
    XplFormula lhs = parse_unary();
    for (;;) {
      skip_space();
      if (peek() != '&') return lhs;
      ++pos_;
      lhs = XplFormula::binary(Op::conjunction, lhs, parse_unary());
    }
  }

  XplFormula parse_unary() {
    skip_space();
    if (eof()) fail("expected a formula");
    char c = peek();
    if (c == '!') {
      ++pos_;
      return XplFormula::unary(Op::negation, parse_unary());
    }
    if (c == '(') {
      std::size_t open = pos_++;
      XplFormula inner = parse_or();
      skip_space();
      if (peek() != ')') fail_at("unbalanced '('", open);
      ++pos_;
      return inner;
    }
    if (c == '[') return XplFormula::atom(parse_bracketed_filter());
    if (is_alpha(c)) {
      std::size_t start = pos_;
      while (is_alpha(peek())) ++pos_;
      std::string_view word = in_.substr(start, pos_ - start);
      if (word == "true") return XplFormula::truth();
      if (word == "false") return XplFormula::falsity();
      for (const Keyword& kw : kQuantifiers) {
        if (kw.text != word) continue;
        if (arity(kw.op) == 1) return XplFormula::unary(kw.op, parse_unary());
        expect('(');
        XplFormula lhs = parse_or();
        expect(',');
        XplFormula rhs = parse_or();
        expect(')');
        return XplFormula::binary(kw.op, lhs, rhs);
      }
      fail_at("unknown operator '" + std::string(word) + "'", start);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  // Finds the matching ']' (skipping nested brackets and string literals)
  // and parses the enclosed filter.
  xpath::FilterPtr parse_bracketed_filter() {
    std::size_t open = pos_;
    std::size_t depth = 0;
    std::size_t i = pos_;
    for (; i < in_.size(); ++i) {
      char c = in_[i];
      if (c == '"' || c == '\'') {
        std::size_t close = in_.find(c, i + 1);
        if (close == std::string_view::npos) fail_at("unterminated string literal", i);
        i = close;
      } else if (c == '[') {
        ++depth;
      } else if (c == ']') {
        if (--depth == 0) break;
      }
    }
    if (i >= in_.size()) fail_at("unbalanced '['", open);
    std::string_view body = in_.substr(open + 1, i - open - 1);
    pos_ = i + 1;
    try {
      return xpath::parse_filter(body);
    } catch (const SyntaxError& e) {
      throw SyntaxError(e.detail() + " (in filter opened at column " + std::to_string(open + 1) + ")",
                        1, open + 1 + e.column());
    }
  }

  std::string_view in_;
  std::size_t pos_ = 0;
};

void collect(const XplFormula& f, FilterRegistry& registry) {
  switch (arity(f.op())) {
    case 0:
      if (f.op() == Op::atom) registry.intern(f.atom_value());
      return;
    case 1: collect(f.lhs(), registry); return;
    default:
      collect(f.lhs(), registry);
      collect(f.rhs(), registry);
  }
}

struct ChunkFailure {
  net::NodeId node;
  std::string reason;
};

// Evaluates `filter` on nodes [begin, end), writing flags into `out`. Stops at
// the first failing node and reports it.
std::optional<ChunkFailure> evaluate_range(const net::Network& net, const xpath::Filter& filter,
                                           net::NodeId begin, net::NodeId end,
                                           std::vector<std::uint8_t>& out) {
  for (net::NodeId v = begin; v < end; ++v) {
    try {
      out[v] = xpath::eval_filter(filter, net.payload(v)) ? 1 : 0;
    } catch (const TypeError& e) {
      return ChunkFailure{v, e.what()};
    }
  }
  return std::nullopt;
}

}  // namespace

XplFormula parse_xpl(std::string_view text) { return XplParser(text).parse(); }

std::string to_string(const XplFormula& formula) {
  return render(formula, [](const xpath::FilterPtr& f) { return "[" + xpath::to_string(*f) + "]"; });
}

const ctl::PropId& FilterRegistry::intern(const xpath::FilterPtr& filter) {
  std::string canonical = xpath::to_string(*filter);
  auto [it, inserted] = by_canonical_.try_emplace(canonical, entries_.size());
  if (inserted) {
    entries_.push_back({"p" + std::to_string(entries_.size() + 1), filter, std::move(canonical)});
  }
  return entries_[it->second].prop;
}

const ctl::PropId& FilterRegistry::prop_of(const xpath::Filter& filter) const {
  std::string canonical = xpath::to_string(filter);
  auto it = by_canonical_.find(canonical);
  if (it == by_canonical_.end()) throw MissingFilter("filter [" + canonical + "] is not registered");
  return entries_[it->second].prop;
}

bool FilterRegistry::contains(const xpath::Filter& filter) const {
  return by_canonical_.count(xpath::to_string(filter)) != 0;
}

FilterRegistry collect_filters(const XplFormula& formula) {
  FilterRegistry registry;
  collect(formula, registry);
  return registry;
}

ctl::SatSet query(const net::Network& net, const xpath::Filter& filter, unsigned parallelism) {
  auto n = static_cast<net::NodeId>(net.node_count());
  std::vector<std::uint8_t> bits(n, 0);
  unsigned workers = std::max(1u, std::min<unsigned>(parallelism, std::max<net::NodeId>(n, 1)));

  std::vector<std::optional<ChunkFailure>> failures(workers);
  if (workers == 1) {
    failures[0] = evaluate_range(net, filter, 0, n, bits);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      auto begin = static_cast<net::NodeId>(std::uint64_t{n} * w / workers);
      auto end = static_cast<net::NodeId>(std::uint64_t{n} * (w + 1) / workers);
      threads.emplace_back([&, w, begin, end] { failures[w] = evaluate_range(net, filter, begin, end, bits); });
    }
    for (std::thread& t : threads) t.join();
  }
  // Chunks are in node order, so the first failure is the lowest node id,
  // exactly what a sequential pass would report.
  for (const auto& failure : failures) {
    if (failure) throw FilterEvaluationError(net.key(failure->node), xpath::to_string(filter), failure->reason);
  }
  return ctl::SatSet(std::move(bits));
}

Labelling label_step(const net::Network& net, const XplFormula& formula, unsigned parallelism) {
  Labelling out{ctl::LabelMap(net.node_count()), collect_filters(formula)};
  for (const FilterRegistry::Entry& entry : out.registry.entries()) {
    out.labels.register_prop(entry.prop);
    ctl::SatSet sat = query(net, *entry.filter, parallelism);
    for (net::NodeId v : sat.ids()) out.labels.add(v, entry.prop);
  }
  return out;
}

ctl::CtlFormula replace_step(const XplFormula& formula, const FilterRegistry& registry) {
  return map_atoms<ctl::PropId>(formula, [&](const xpath::FilterPtr& f) { return registry.prop_of(*f); });
}

ctl::SatSet check(const net::Network& net, const XplFormula& formula, unsigned parallelism) {
  Labelling labelling = label_step(net, formula, parallelism);
  ctl::CtlFormula pure = replace_step(formula, labelling.registry);
  return ctl::model_check(net, labelling.labels, pure);
}

}  // namespace xpl::logic
