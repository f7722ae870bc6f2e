#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace probe {

/// Dense, creation-ordered node identifier. Never reused within a Graph.
struct NodeId {
  std::uint32_t value = 0;

  constexpr NodeId() = default;
  constexpr explicit NodeId(std::uint32_t v) : value(v) {}

  constexpr auto operator<=>(const NodeId&) const = default;
  constexpr std::size_t index() const { return value; }
};

std::ostream& operator<<(std::ostream& os, NodeId id);

inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

/// Undirected simple graph. Only additions are supported.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n) {}

  NodeId add_node();

  /// Returns true when the edge was new, false for a duplicate.
  bool add_edge(NodeId u, NodeId v);

  bool has_node(NodeId v) const { return v.index() < adj_.size(); }
  bool has_edge(NodeId u, NodeId v) const;

  std::size_t node_count() const { return adj_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  std::span<const NodeId> neighbors(NodeId v) const;
  std::size_t degree(NodeId v) const { return neighbors(v).size(); }

  /// All edges as (u, v) with u < v, in insertion order.
  const std::vector<std::pair<NodeId, NodeId>>& edges() const { return edge_list_; }

  bool operator==(const Graph& other) const;

 private:
  void require(NodeId v) const;

  std::vector<std::vector<NodeId>> adj_;
  std::vector<std::pair<NodeId, NodeId>> edge_list_;
  std::unordered_set<std::uint64_t> edges_;
};

/// BFS distances from `source`; unreachable nodes hold kUnreachable.
std::vector<std::uint32_t> bfs_distances(const Graph& g, NodeId source);

/// Hop distance, or std::nullopt when u and v are disconnected.
std::optional<std::uint32_t> hop_distance(const Graph& g, NodeId u, NodeId v);

bool is_connected(const Graph& g);

struct InducedSubgraph {
  Graph graph;
  std::vector<NodeId> original;  // local id -> id in the source graph
  NodeId center;                 // local id of the ball center

  std::optional<NodeId> local_of(NodeId original_id) const;
};

/// Subgraph induced by every node within k hops of v.
InducedSubgraph k_hop_induced(const Graph& g, NodeId v, std::uint32_t k);

/// Subgraph induced by an arbitrary node subset (order of `nodes` defines local ids).
InducedSubgraph induced(const Graph& g, std::span<const NodeId> nodes);

/// Copies `guest` into `host` with fresh ids and bridges host_node to the image
/// of guest_node. Returns guest id -> host id.
std::vector<NodeId> attach_disjoint(Graph& host, const Graph& guest, NodeId host_node,
                                    NodeId guest_node);

/// Copies `guest` into `host` without any bridge edge.
std::vector<NodeId> copy_into(Graph& host, const Graph& guest);

/// Preferential attachment. The first m nodes form a path; every later node
/// attaches to m distinct earlier nodes drawn proportionally to degree.
Graph barabasi_albert(std::size_t n, std::size_t m, std::uint64_t seed);

/// Attachment count whose asymptotic mean degree 2m(n-m)/n is closest to `mean_degree`.
std::size_t ba_attachment_for_mean_degree(std::size_t n, double mean_degree);

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed);

Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph star_graph(std::size_t leaves);
Graph complete_graph(std::size_t n);

/// Edge-list text: one "u v" pair per line, '#' starts a comment.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);

}  // namespace probe

template <>
struct std::hash<probe::NodeId> {
  std::size_t operator()(probe::NodeId id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};
