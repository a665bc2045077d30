#include "xpl/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "xpl/errors.hpp"

namespace xpl::metrics {

namespace {

// Sorted neighbour lists of the underlying simple undirected graph.
std::vector<std::vector<NodeId>> simple_neighbours(const net::Network& net) {
  std::vector<std::vector<NodeId>> adj(net.node_count());
  for (const net::Edge& e : net.edges()) {
    if (e.from == e.to) continue;
    adj[e.from].push_back(e.to);
    adj[e.to].push_back(e.from);
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return adj;
}

}  // namespace

Clustering clustering(const net::Network& net) {
  auto adj = simple_neighbours(net);
  Clustering c;
  for (NodeId v = 0; v < adj.size(); ++v) {
    std::uint64_t d = adj[v].size();
    if (d >= 2) c.connected_triples += d * (d - 1) / 2;
  }
  // Each triangle u < v < w is counted once, from its smallest edge (u, v).
  for (NodeId u = 0; u < adj.size(); ++u) {
    for (NodeId v : adj[u]) {
      if (v <= u) continue;
      auto a = std::upper_bound(adj[u].begin(), adj[u].end(), v);
      auto b = std::upper_bound(adj[v].begin(), adj[v].end(), v);
      while (a != adj[u].end() && b != adj[v].end()) {
        if (*a < *b) {
          ++a;
        } else if (*b < *a) {
          ++b;
        } else {
          ++c.triangles;
          ++a;
          ++b;
        }
      }
    }
  }
  return c;
}

double clustering_coefficient(const net::Network& net) { return clustering(net).value(); }

std::vector<std::vector<NodeId>> components(const net::Network& net) {
  auto adj = simple_neighbours(net);
  std::size_t n = adj.size();
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<std::vector<NodeId>> out;
  for (NodeId start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<NodeId> comp{start};
    seen[start] = 1;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (NodeId w : adj[comp[head]]) {
        if (!seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  // Components were discovered in order of their smallest id, so a stable
  // sort by size keeps the tie-break.
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
  return out;
}

Geodesics geodesics(const net::Network& net) {
  if (net.node_count() == 0) throw EmptyNetwork();
  auto adj = simple_neighbours(net);
  std::vector<NodeId> giant = components(net).front();

  constexpr std::uint64_t kUnreached = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> dist(adj.size(), kUnreached);
  std::vector<NodeId> queue;
  Geodesics g;
  for (NodeId source : giant) {
    std::fill(dist.begin(), dist.end(), kUnreached);
    queue.assign(1, source);
    dist[source] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      NodeId u = queue[head];
      for (NodeId w : adj[u]) {
        if (dist[w] != kUnreached) continue;
        dist[w] = dist[u] + 1;
        queue.push_back(w);
        g.diameter = std::max(g.diameter, dist[w]);
        // Count each unordered pair once, from its smaller endpoint.
        if (source < w) {
          g.distance_sum += dist[w];
          ++g.pair_count;
        }
      }
    }
  }
  return g;
}

std::uint64_t diameter(const net::Network& net) { return geodesics(net).diameter; }

double mean_geodesic(const net::Network& net) { return geodesics(net).mean(); }

DegreeHistogram degree_histogram(const net::Network& net) {
  DegreeHistogram h;
  h.directed = net.directed();
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (net.directed()) {
      ++h.in[net.in_degree(v)];
      ++h.out[net.out_degree(v)];
    } else {
      ++h.degree[net.out_degree(v)];
    }
  }
  return h;
}

bool eulerian_path_exists(const net::Network& net) {
  std::size_t n = net.node_count();
  std::vector<std::uint64_t> degree(n, 0);
  for (const net::Edge& e : net.edges()) {
    double w = e.weight;
    if (!(w >= 1) || std::floor(w) != w || w > 1e15) {
      throw FormatError("eulerian check needs positive integer edge weights, found " +
                        std::to_string(w) + " on " + net.key(e.from) + " -> " + net.key(e.to));
    }
    auto mult = static_cast<std::uint64_t>(w);
    degree[e.from] += mult;
    degree[e.to] += mult;
  }

  std::size_t with_edges = 0;
  std::size_t odd = 0;
  for (NodeId v = 0; v < n; ++v) {
    if (degree[v] > 0) ++with_edges;
    if (degree[v] % 2 == 1) ++odd;
  }
  if (odd != 0 && odd != 2) return false;
  if (with_edges == 0) return true;

  // All nodes that touch an edge must share one component. Isolated nodes
  // form singleton components and are ignored.
  for (const auto& comp : components(net)) {
    bool touches = std::any_of(comp.begin(), comp.end(), [&](NodeId v) { return degree[v] > 0; });
    if (touches) {
      std::size_t inside = static_cast<std::size_t>(
          std::count_if(comp.begin(), comp.end(), [&](NodeId v) { return degree[v] > 0; }));
      return inside == with_edges;
    }
  }
  return false;
}

}  // namespace xpl::metrics
