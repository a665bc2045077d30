#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "xpl/network.hpp"

// Network-level statistics. Everything except the degree histogram views the
// network as undirected.
namespace xpl::metrics {

using net::NodeId;

struct Clustering {
  std::uint64_t triangles = 0;
  std::uint64_t connected_triples = 0;  // sum over v of C(deg(v), 2)

  // 3 * triangles / connected_triples, or 0 when there are no triples.
  double value() const {
    return connected_triples == 0 ? 0.0
                                  : 3.0 * static_cast<double>(triangles) /
                                        static_cast<double>(connected_triples);
  }
};

// Transitivity on the underlying simple graph (direction, multiplicity and
// self-loops ignored).
Clustering clustering(const net::Network& net);
double clustering_coefficient(const net::Network& net);

// Weakly connected components, largest first; equal sizes are ordered by
// their smallest key. Each component lists its ids ascending.
std::vector<std::vector<NodeId>> components(const net::Network& net);

struct Geodesics {
  std::uint64_t diameter = 0;
  std::uint64_t distance_sum = 0;  // over unordered distinct pairs
  std::uint64_t pair_count = 0;

  double mean() const {
    return pair_count == 0 ? 0.0
                           : static_cast<double>(distance_sum) / static_cast<double>(pair_count);
  }
};

// Breadth-first distances within the giant (largest) component. Throws
// EmptyNetwork when the network has no nodes.
Geodesics geodesics(const net::Network& net);
std::uint64_t diameter(const net::Network& net);
double mean_geodesic(const net::Network& net);

// Degree -> number of nodes. Degrees count parallel edges; an undirected
// self-loop adds 2.
using Histogram = std::map<std::size_t, std::size_t>;

struct DegreeHistogram {
  bool directed = false;
  Histogram degree;  // undirected networks
  Histogram in;      // directed networks
  Histogram out;     // directed networks
};

DegreeHistogram degree_histogram(const net::Network& net);

// True iff every edge lies in one connected component and 0 or 2 nodes have
// odd degree. Edge weights count as multiplicities and must be positive
// integers, else FormatError. Direction is ignored.
bool eulerian_path_exists(const net::Network& net);

}  // namespace xpl::metrics
