#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "xpl/xpath.hpp"

#ifndef XPL_FIXTURE_DIR
#error "XPL_FIXTURE_DIR must point at tests/fixtures"
#endif

namespace xpl::testkit {

namespace {

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& items) {
  return items[std::uniform_int_distribution<std::size_t>(0, items.size() - 1)(rng)];
}

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

const std::vector<Op> kAllOps = {
    Op::truth, Op::falsity, Op::atom, Op::negation, Op::conjunction, Op::disjunction,
    Op::ex,    Op::ax,      Op::ef,   Op::af,       Op::eg,          Op::ag,
    Op::eu,    Op::au,      Op::iex,  Op::iax,      Op::ief,         Op::iaf,
    Op::ieg,   Op::iag,     Op::ieu,  Op::iau,
};

template <typename Atom, typename MakeAtom>
Formula<Atom> random_formula(Rng& rng, int depth, MakeAtom&& make_atom) {
  Op op = pick(rng, kAllOps);
  if (depth <= 0 && arity(op) != 0) op = chance(rng, 0.8) ? Op::atom : (chance(rng, 0.5) ? Op::truth : Op::falsity);
  switch (arity(op)) {
    case 0:
      if (op == Op::truth) return Formula<Atom>::truth();
      if (op == Op::falsity) return Formula<Atom>::falsity();
      return Formula<Atom>::atom(make_atom());
    case 1: return Formula<Atom>::unary(op, random_formula<Atom>(rng, depth - 1, make_atom));
    default:
      return Formula<Atom>::binary(op, random_formula<Atom>(rng, depth - 1, make_atom),
                                   random_formula<Atom>(rng, depth - 1, make_atom));
  }
}

using Bits = std::vector<char>;

Bits direct(const net::Network& net, const logic::XplFormula& f) {
  const std::size_t n = net.node_count();
  Bits out(n, 0);
  switch (f.op()) {
    case Op::truth: std::fill(out.begin(), out.end(), 1); return out;
    case Op::falsity: return out;
    case Op::atom:
      for (net::NodeId v = 0; v < n; ++v) out[v] = xpath::eval_filter(*f.atom_value(), net.payload(v));
      return out;
    case Op::negation: {
      Bits a = direct(net, f.lhs());
      for (std::size_t v = 0; v < n; ++v) out[v] = !a[v];
      return out;
    }
    case Op::conjunction:
    case Op::disjunction: {
      Bits a = direct(net, f.lhs());
      Bits b = direct(net, f.rhs());
      for (std::size_t v = 0; v < n; ++v) out[v] = f.op() == Op::conjunction ? (a[v] && b[v]) : (a[v] || b[v]);
      return out;
    }
    default: break;
  }

  const bool inverse = is_inverse(f.op());
  auto next = [&](net::NodeId v) { return inverse ? net.predecessors(v) : net.successors(v); };
  auto any_in = [&](net::NodeId v, const Bits& z) {
    for (net::NodeId w : next(v)) {
      if (z[w]) return true;
    }
    return false;
  };
  auto all_in = [&](net::NodeId v, const Bits& z) {
    for (net::NodeId w : next(v)) {
      if (!z[w]) return false;
    }
    return true;
  };
  auto has_next = [&](net::NodeId v) { return !next(v).empty(); };

  Bits a = direct(net, f.lhs());
  Bits b = arity(f.op()) == 2 ? direct(net, f.rhs()) : Bits{};

  // Iterates `step` from `start` until nothing changes.
  auto fixpoint = [&](Bits z, auto&& step) {
    for (;;) {
      Bits next_z(n, 0);
      for (net::NodeId v = 0; v < n; ++v) next_z[v] = step(v, z);
      if (next_z == z) return z;
      z = std::move(next_z);
    }
  };
  Bits none(n, 0), all(n, 1);

  switch (forward_of(f.op())) {
    case Op::ex:
      for (net::NodeId v = 0; v < n; ++v) out[v] = any_in(v, a);
      return out;
    case Op::ax:
      for (net::NodeId v = 0; v < n; ++v) out[v] = all_in(v, a);
      return out;
    case Op::ef:
      return fixpoint(none, [&](net::NodeId v, const Bits& z) { return a[v] || any_in(v, z); });
    case Op::af:
      return fixpoint(none, [&](net::NodeId v, const Bits& z) { return a[v] || (has_next(v) && all_in(v, z)); });
    case Op::eg:
      return fixpoint(all, [&](net::NodeId v, const Bits& z) { return a[v] && (!has_next(v) || any_in(v, z)); });
    case Op::ag:
      return fixpoint(all, [&](net::NodeId v, const Bits& z) { return a[v] && all_in(v, z); });
    case Op::eu:
      return fixpoint(none, [&](net::NodeId v, const Bits& z) { return b[v] || (a[v] && any_in(v, z)); });
    case Op::au:
      return fixpoint(none, [&](net::NodeId v, const Bits& z) {
        return b[v] || (a[v] && has_next(v) && all_in(v, z));
      });
    default: throw std::logic_error("unhandled operator");
  }
}

}  // namespace

std::filesystem::path fixture_path(const std::string& name) {
  return std::filesystem::path(XPL_FIXTURE_DIR) / name;
}

std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name), std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

net::Network load_fixture(const std::string& name) { return net::parse_network(read_fixture(name)); }

std::vector<std::string> keys_of(const net::Network& net, const ctl::SatSet& set) { return set.keys(net); }

net::Network random_network(Rng& rng, const RandomGraphOptions& options) {
  std::size_t n = static_cast<std::size_t>(uniform(rng, 1, static_cast<int>(options.max_nodes)));
  bool directed = !options.allow_undirected || chance(rng, 0.75);
  net::NetworkBuilder builder(directed);
  for (std::size_t i = 0; i < n; ++i) builder.add_node("v" + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = directed ? 0 : i; j < n; ++j) {
      if (chance(rng, options.edge_probability)) builder.add_edge("v" + std::to_string(i), "v" + std::to_string(j));
    }
  }
  return builder.build();
}

ctl::LabelMap random_labels(Rng& rng, std::size_t node_count) {
  ctl::LabelMap labels(node_count);
  for (const auto& p : kProps) labels.register_prop(p);
  for (net::NodeId v = 0; v < node_count; ++v) {
    for (const auto& p : kProps) {
      if (chance(rng, 0.5)) labels.add(v, p);
    }
  }
  return labels;
}

ctl::CtlFormula random_ctl(Rng& rng, int depth) {
  return random_formula<ctl::PropId>(rng, depth, [&] { return pick(rng, kProps); });
}

net::Network random_attributed_network(Rng& rng, std::size_t max_nodes, bool numeric_safe) {
  static const std::vector<std::string> kTags = {"red", "green", "blue"};
  std::size_t n = static_cast<std::size_t>(uniform(rng, 1, static_cast<int>(max_nodes)));
  bool directed = chance(rng, 0.75);
  std::ostringstream doc;
  doc << "<network directed=\"" << (directed ? "true" : "false") << "\">\n";
  for (std::size_t i = 0; i < n; ++i) {
    doc << "  <node key=\"v" << i << "\">";
    if (!numeric_safe && chance(rng, 0.2)) {
      doc << "<v>n/a</v>";
    } else if (chance(rng, 0.9)) {
      doc << "<v>" << uniform(rng, 0, 5) << "</v>";
    }
    if (chance(rng, 0.8)) doc << "<tag>" << pick(rng, kTags) << "</tag>";
    int items = uniform(rng, 0, 3);
    for (int k = 0; k < items; ++k) doc << "<item>" << char('a' + uniform(rng, 0, 2)) << "</item>";
    doc << "</node>\n";
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = directed ? 0 : i; j < n; ++j) {
      if (chance(rng, 0.3)) doc << "  <edge from=\"v" << i << "\" to=\"v" << j << "\"/>\n";
    }
  }
  doc << "</network>\n";
  return net::parse_network(doc.str());
}

xpath::FilterPtr random_filter(Rng& rng, int depth) {
  auto leaf = [&]() -> std::string {
    switch (uniform(rng, 0, 9)) {
      case 0: return "v > " + std::to_string(uniform(rng, 0, 5));
      case 1: return "v = " + std::to_string(uniform(rng, 0, 5));
      case 2: return "tag = \"" + std::string(uniform(rng, 0, 1) ? "red" : "blue") + "\"";
      case 3: return "tag != \"green\"";
      case 4: return "contains(tag, \"e\")";
      case 5: return "count(item) >= " + std::to_string(uniform(rng, 0, 3));
      case 6: return "item = \"a\"";
      case 7: return "@key = \"v" + std::to_string(uniform(rng, 0, 7)) + "\"";
      case 8: return "item[. = \"b\"]";
      default: return "tag";
    }
  };
  std::string text = leaf();
  for (int d = 0; d < depth; ++d) {
    switch (uniform(rng, 0, 2)) {
      case 0: text = "(" + text + ") and (" + leaf() + ")"; break;
      case 1: text = "(" + text + ") or (" + leaf() + ")"; break;
      default: text = "not(" + text + ")"; break;
    }
  }
  return xpath::parse_filter(text);
}

logic::XplFormula random_xpl(Rng& rng, int depth) {
  return random_formula<xpath::FilterPtr>(rng, depth, [&] { return random_filter(rng, uniform(rng, 0, 1)); });
}

ctl::SatSet direct_eval(const net::Network& net, const logic::XplFormula& formula) {
  Bits bits = direct(net, formula);
  return ctl::SatSet(std::vector<std::uint8_t>(bits.begin(), bits.end()));
}

DistanceSummary all_pairs_oracle(const net::Network& net) {
  const std::size_t n = net.node_count();
  constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max() / 4;
  std::vector<std::vector<std::uint64_t>> d(n, std::vector<std::uint64_t>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (const net::Edge& e : net.edges()) {
    if (e.from == e.to) continue;
    d[e.from][e.to] = d[e.to][e.from] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);

  DistanceSummary s;
  std::size_t best = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t size = 0;
    for (std::size_t j = 0; j < n; ++j) size += d[i][j] < kInf;
    if (size > s.giant_size) {
      s.giant_size = size;
      best = i;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (d[best][i] >= kInf || d[best][j] >= kInf) continue;
      s.diameter = std::max(s.diameter, d[i][j]);
      s.distance_sum += d[i][j];
      ++s.pair_count;
    }
  }
  return s;
}

namespace {

bool extend_trail(int at, std::size_t used_count, std::vector<char>& used,
                  const std::vector<std::pair<int, int>>& edges) {
  if (used_count == edges.size()) return true;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (used[e]) continue;
    int next;
    if (edges[e].first == at) {
      next = edges[e].second;
    } else if (edges[e].second == at) {
      next = edges[e].first;
    } else {
      continue;
    }
    used[e] = 1;
    if (extend_trail(next, used_count + 1, used, edges)) return true;
    used[e] = 0;
  }
  return false;
}

}  // namespace

bool brute_force_eulerian(std::size_t node_count, const std::vector<std::pair<int, int>>& edges) {
  if (edges.empty()) return true;
  std::vector<char> used(edges.size(), 0);
  for (std::size_t start = 0; start < node_count; ++start) {
    if (extend_trail(static_cast<int>(start), 0, used, edges)) return true;
  }
  return false;
}

}  // namespace xpl::testkit

namespace xpl::ctl {

void PrintTo(const SatSet& set, std::ostream* os) {
  *os << "{";
  bool first = true;
  for (NodeId v : set.ids()) {
    *os << (first ? "" : ", ") << v;
    first = false;
  }
  *os << "}";
}

}  // namespace xpl::ctl
