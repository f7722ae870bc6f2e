#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "probe/graph.hpp"

namespace probe {

inline constexpr std::size_t kMaxCanonicalNodes = 11;

/// Isomorphism-invariant code for graphs with at most kMaxCanonicalNodes nodes:
/// the minimum upper-triangle adjacency bitstring over all labelings that order
/// vertices by a degree-based refinement.
std::uint64_t canonical_code(const Graph& g);

/// Inverse of canonical_code for a known node count.
Graph graph_from_code(std::uint64_t code, std::size_t n);

/// Every non-isomorphic connected graph on exactly n nodes, in canonical form and
/// sorted by (edge count, code). Counts follow OEIS A001349.
std::vector<Graph> connected_graphs(std::size_t n);

/// Connected graphs with min_n..max_n nodes, grouped by node count ascending.
std::vector<Graph> connected_graphs_up_to(std::size_t max_n, std::size_t min_n = 1);

// Random families used once exhaustive enumeration is out of reach.
Graph random_tree(std::size_t n, std::mt19937_64& rng);
Graph random_caterpillar(std::size_t n, std::mt19937_64& rng);
Graph random_lobster(std::size_t n, std::mt19937_64& rng);
Graph random_connected_gnp(std::size_t n, std::mt19937_64& rng);

}  // namespace probe
