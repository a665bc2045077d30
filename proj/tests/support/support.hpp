#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "xpl/ctl.hpp"
#include "xpl/logic.hpp"
#include "xpl/network.hpp"

namespace xpl::testkit {

using Rng = std::mt19937_64;

std::filesystem::path fixture_path(const std::string& name);
std::string read_fixture(const std::string& name);
net::Network load_fixture(const std::string& name);

// Keys of `ids` in `net`, ascending.
std::vector<std::string> keys_of(const net::Network& net, const ctl::SatSet& set);

// ---- plain networks and CTL formulas ------------------------------------

struct RandomGraphOptions {
  std::size_t max_nodes = 8;
  double edge_probability = 0.3;
  bool allow_undirected = true;
};

// Keys "v0" .. "v<n-1>" with n in [1, max_nodes]; every ordered pair (self
// pairs included) becomes an edge with the given probability.
net::Network random_network(Rng& rng, const RandomGraphOptions& options = {});

inline const std::vector<ctl::PropId> kProps = {"p", "q", "r"};

// All of kProps registered, each holding at a node with probability 1/2.
ctl::LabelMap random_labels(Rng& rng, std::size_t node_count);

// Uniform over the full operator alphabet, inverse forms included; leaves are
// true, false or an atom from kProps.
ctl::CtlFormula random_ctl(Rng& rng, int depth);

// ---- attributed networks and XPL formulas -------------------------------

// Payloads look like <node key="v3"><v>4</v><tag>red</tag><item/>...</node>.
// One node in five gets a non-numeric <v>, so numeric filters over it raise
// TypeError unless `numeric_safe`.
net::Network random_attributed_network(Rng& rng, std::size_t max_nodes, bool numeric_safe);

xpath::FilterPtr random_filter(Rng& rng, int depth);
logic::XplFormula random_xpl(Rng& rng, int depth);

// Recursive XPL semantics with filters evaluated inline at atoms and every
// temporal operator computed by naive fixpoint iteration over successor
// lists. Shares nothing with the three-step pipeline.
ctl::SatSet direct_eval(const net::Network& net, const logic::XplFormula& formula);

// ---- metrics oracles -----------------------------------------------------

struct DistanceSummary {
  std::uint64_t diameter = 0;
  std::uint64_t distance_sum = 0;
  std::uint64_t pair_count = 0;
  std::size_t giant_size = 0;
};

// Floyd-Warshall over the simple undirected graph; the giant component is the
// largest reachability class, ties to the one holding the smallest id.
DistanceSummary all_pairs_oracle(const net::Network& net);

// Searches every ordering of the (undirected, multiplicity-expanded) edge
// list for a trail that uses each edge once. Intended for m <= 8.
bool brute_force_eulerian(std::size_t node_count, const std::vector<std::pair<int, int>>& edges);

}  // namespace xpl::testkit

namespace xpl::ctl {
// gtest printer: member ids, e.g. {0, 3}.
void PrintTo(const SatSet& set, std::ostream* os);
}  // namespace xpl::ctl
