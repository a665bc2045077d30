// Definition-driven CTL evaluation over a dense adjacency matrix. Nothing
// here shares code with the linear-time checker; the two are compared in the
// randomized test suites.

#include <array>
#include <bitset>

#include "xpl/ctl.hpp"
#include "xpl/errors.hpp"

namespace xpl::ctl {

namespace {

constexpr std::size_t kMax = kOracleMaxNodes;
using Row = std::bitset<kMax>;
using Matrix = std::array<Row, kMax>;

struct Oracle {
  std::size_t n;
  Matrix forward{};   // forward[u][v]: edge u -> v
  Matrix backward{};  // backward[u][v]: edge v -> u
  const LabelMap& labels;

  const Matrix& adjacency(Op op) const { return is_inverse(op) ? backward : forward; }

  bool is_sink(const Matrix& adj, std::size_t v) const { return adj[v].none(); }

  // Reflexive-transitive closure (Warshall).
  Matrix closure(const Matrix& adj) const {
    Matrix reach = adj;
    for (std::size_t v = 0; v < n; ++v) reach[v].set(v);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        if (reach[i][k]) reach[i] |= reach[k];
      }
    }
    return reach;
  }

  Row ex(const Matrix& adj, const Row& p) const {
    Row out;
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t w = 0; w < n; ++w) {
        if (adj[v][w] && p[w]) out.set(v);
      }
    }
    return out;
  }

  Row ax(const Matrix& adj, const Row& p) const {
    Row out;
    for (std::size_t v = 0; v < n; ++v) {
      bool all = true;
      for (std::size_t w = 0; w < n; ++w) {
        if (adj[v][w] && !p[w]) all = false;
      }
      out[v] = all;
    }
    return out;
  }

  Row ef(const Matrix& adj, const Row& p) const {
    Matrix reach = closure(adj);
    Row out;
    for (std::size_t v = 0; v < n; ++v) out[v] = (reach[v] & p).any();
    return out;
  }

  // Every node reachable from v lies on some maximal path from v.
  Row ag(const Matrix& adj, const Row& p) const {
    Matrix reach = closure(adj);
    Row out;
    Row mask = universe();
    for (std::size_t v = 0; v < n; ++v) out[v] = (reach[v] & ~p & mask).none();
    return out;
  }

  // Z := goal | (stay & pre_exists(Z)), iterated from the empty set.
  Row eu(const Matrix& adj, const Row& stay, const Row& goal) const {
    Row z;
    for (;;) {
      Row next = goal | (stay & ex(adj, z));
      if (next == z) return z;
      z = next;
    }
  }

  // Z := goal | (stay & not-sink & pre_forall(Z)), iterated from the empty set.
  Row au(const Matrix& adj, const Row& stay, const Row& goal) const {
    Row z;
    for (;;) {
      Row step;
      for (std::size_t v = 0; v < n; ++v) {
        if (is_sink(adj, v) || !stay[v]) continue;
        bool all = true;
        for (std::size_t w = 0; w < n; ++w) {
          if (adj[v][w] && !z[w]) all = false;
        }
        step[v] = all;
      }
      Row next = goal | step;
      if (next == z) return z;
      z = next;
    }
  }

  // Depth-first search inside p from v: succeeds on reaching a sink of the
  // full graph or on closing a cycle (an edge back to a node on the stack).
  bool has_maximal_path(const Matrix& adj, const Row& p, std::size_t v) const {
    if (!p[v]) return false;
    std::array<int, kMax> color{};  // 0 white, 1 on stack, 2 done
    struct Search {
      const Oracle& o;
      const Matrix& adj;
      const Row& p;
      std::array<int, kMax>& color;
      bool run(std::size_t u) const {
        if (o.is_sink(adj, u)) return true;
        color[u] = 1;
        for (std::size_t w = 0; w < o.n; ++w) {
          if (!adj[u][w] || !p[w]) continue;
          if (color[w] == 1) return true;
          if (color[w] == 0 && run(w)) return true;
        }
        color[u] = 2;
        return false;
      }
    };
    return Search{*this, adj, p, color}.run(v);
  }

  Row eg(const Matrix& adj, const Row& p) const {
    Row out;
    for (std::size_t v = 0; v < n; ++v) out[v] = has_maximal_path(adj, p, v);
    return out;
  }

  // Least fixpoint Z := p | (not-sink & pre_forall(Z)).
  Row af(const Matrix& adj, const Row& p) const { return au(adj, universe(), p); }

  Row universe() const {
    Row r;
    for (std::size_t v = 0; v < n; ++v) r.set(v);
    return r;
  }

  Row eval(const CtlFormula& f) const {
    const Matrix& adj = adjacency(f.op());
    switch (forward_of(f.op())) {
      case Op::truth: return universe();
      case Op::falsity: return Row();
      case Op::atom: {
        Row r;
        const SatSet& set = labels.nodes_with(f.atom_value());
        for (std::size_t v = 0; v < n; ++v) r[v] = set.contains(static_cast<NodeId>(v));
        return r;
      }
      case Op::negation: return ~eval(f.lhs()) & universe();
      case Op::conjunction: return eval(f.lhs()) & eval(f.rhs());
      case Op::disjunction: return eval(f.lhs()) | eval(f.rhs());
      case Op::ex: return ex(adj, eval(f.lhs()));
      case Op::ax: return ax(adj, eval(f.lhs()));
      case Op::ef: return ef(adj, eval(f.lhs()));
      case Op::ag: return ag(adj, eval(f.lhs()));
      case Op::eg: return eg(adj, eval(f.lhs()));
      case Op::af: return af(adj, eval(f.lhs()));
      case Op::eu: return eu(adj, eval(f.lhs()), eval(f.rhs()));
      case Op::au: return au(adj, eval(f.lhs()), eval(f.rhs()));
      default: break;
    }
    return Row();
  }
};

}  // namespace

SatSet oracle_check(const net::Network& net, const LabelMap& labels, const CtlFormula& formula) {
  std::size_t n = net.node_count();
  if (n > kMax) {
    throw SizeExceeded("oracle_check supports at most " + std::to_string(kMax) + " nodes, got " +
                       std::to_string(n));
  }
  Oracle oracle{n, {}, {}, labels};
  for (const net::Edge& e : net.edges()) {
    oracle.forward[e.from].set(e.to);
    oracle.backward[e.to].set(e.from);
    if (!net.directed()) {
      oracle.forward[e.to].set(e.from);
      oracle.backward[e.from].set(e.to);
    }
  }
  Row result = oracle.eval(formula);
  SatSet out(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (result[v]) out.insert(static_cast<NodeId>(v));
  }
  return out;
}

}  // namespace xpl::ctl
