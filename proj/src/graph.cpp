#include "probe/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "probe/error.hpp"

namespace probe {

namespace {

std::uint64_t edge_key(NodeId u, NodeId v) {
  if (v < u) std::swap(u, v);
  return (static_cast<std::uint64_t>(u.value) << 32) | v.value;
}

}  // namespace

std::ostream& operator<<(std::ostream& os, NodeId id) { return os << id.value; }

NodeId Graph::add_node() {
  adj_.emplace_back();
  return NodeId(static_cast<std::uint32_t>(adj_.size() - 1));
}

void Graph::require(NodeId v) const {
  if (!has_node(v)) throw Error(Errc::UnknownNode, "node " + std::to_string(v.value));
}

bool Graph::add_edge(NodeId u, NodeId v) {
  require(u);
  require(v);
  if (u == v) throw Error(Errc::SelfLoop, "node " + std::to_string(u.value));
  if (!edges_.insert(edge_key(u, v)).second) return false;
  adj_[u.index()].push_back(v);
  adj_[v.index()].push_back(u);
  edge_list_.emplace_back(std::min(u, v), std::max(u, v));
  return true;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  return has_node(u) && has_node(v) && edges_.contains(edge_key(u, v));
}

std::span<const NodeId> Graph::neighbors(NodeId v) const {
  require(v);
  return adj_[v.index()];
}

bool Graph::operator==(const Graph& other) const {
  return adj_.size() == other.adj_.size() && edges_ == other.edges_;
}

std::vector<std::uint32_t> bfs_distances(const Graph& g, NodeId source) {
  if (!g.has_node(source)) throw Error(Errc::UnknownNode, "node " + std::to_string(source.value));
  std::vector<std::uint32_t> dist(g.node_count(), kUnreachable);
  std::vector<NodeId> queue;
  queue.reserve(g.node_count());
  dist[source.index()] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId u = queue[head];
    for (NodeId w : g.neighbors(u)) {
      if (dist[w.index()] == kUnreachable) {
        dist[w.index()] = dist[u.index()] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::optional<std::uint32_t> hop_distance(const Graph& g, NodeId u, NodeId v) {
  if (!g.has_node(v)) throw Error(Errc::UnknownNode, "node " + std::to_string(v.value));
  const auto d = bfs_distances(g, u)[v.index()];
  if (d == kUnreachable) return std::nullopt;
  return d;
}

bool is_connected(const Graph& g) {
  if (g.node_count() == 0) return true;
  const auto dist = bfs_distances(g, NodeId(0));
  return std::none_of(dist.begin(), dist.end(), [](auto d) { return d == kUnreachable; });
}

std::optional<NodeId> InducedSubgraph::local_of(NodeId original_id) const {
  const auto it = std::find(original.begin(), original.end(), original_id);
  if (it == original.end()) return std::nullopt;
  return NodeId(static_cast<std::uint32_t>(it - original.begin()));
}

InducedSubgraph induced(const Graph& g, std::span<const NodeId> nodes) {
  InducedSubgraph out;
  std::vector<std::uint32_t> local(g.node_count(), kUnreachable);
  for (NodeId v : nodes) {
    if (!g.has_node(v)) throw Error(Errc::UnknownNode, "node " + std::to_string(v.value));
    if (local[v.index()] != kUnreachable) continue;
    local[v.index()] = static_cast<std::uint32_t>(out.original.size());
    out.original.push_back(v);
    out.graph.add_node();
  }
  for (NodeId v : out.original) {
    for (NodeId w : g.neighbors(v)) {
      if (local[w.index()] != kUnreachable && v < w) {
        out.graph.add_edge(NodeId(local[v.index()]), NodeId(local[w.index()]));
      }
    }
  }
  return out;
}

InducedSubgraph k_hop_induced(const Graph& g, NodeId v, std::uint32_t k) {
  const auto dist = bfs_distances(g, v);
  std::vector<NodeId> ball;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist[i] <= k) ball.emplace_back(static_cast<std::uint32_t>(i));
  }
  // Keep the center first so its local id is always 0.
  std::stable_partition(ball.begin(), ball.end(), [v](NodeId w) { return w == v; });
  auto out = induced(g, ball);
  out.center = NodeId(0);
  return out;
}

std::vector<NodeId> copy_into(Graph& host, const Graph& guest) {
  std::vector<NodeId> map;
  map.reserve(guest.node_count());
  for (std::size_t i = 0; i < guest.node_count(); ++i) map.push_back(host.add_node());
  for (const auto& [u, v] : guest.edges()) host.add_edge(map[u.index()], map[v.index()]);
  return map;
}

std::vector<NodeId> attach_disjoint(Graph& host, const Graph& guest, NodeId host_node,
                                    NodeId guest_node) {
  if (!host.has_node(host_node)) throw Error(Errc::UnknownNode, "host node " + std::to_string(host_node.value));
  if (!guest.has_node(guest_node)) throw Error(Errc::UnknownNode, "guest node " + std::to_string(guest_node.value));
  auto map = copy_into(host, guest);
  host.add_edge(host_node, map[guest_node.index()]);
  return map;
}

Graph barabasi_albert(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (m < 1 || n <= m) {
    throw Error(Errc::BadParams, "barabasi_albert requires n > m >= 1 (n=" + std::to_string(n) +
                                     ", m=" + std::to_string(m) + ")");
  }
  std::mt19937_64 rng(seed);
  Graph g(m);
  // Every edge endpoint appears once here, so a uniform pick is degree-proportional.
  std::vector<NodeId> endpoints;
  endpoints.reserve(2 * m * n);
  for (std::size_t i = 1; i < m; ++i) {
    g.add_edge(NodeId(static_cast<std::uint32_t>(i - 1)), NodeId(static_cast<std::uint32_t>(i)));
    endpoints.emplace_back(static_cast<std::uint32_t>(i - 1));
    endpoints.emplace_back(static_cast<std::uint32_t>(i));
  }
  std::vector<NodeId> targets;
  for (std::size_t next = m; next < n; ++next) {
    targets.clear();
    while (targets.size() < m) {
      NodeId pick;
      if (endpoints.empty()) {
        pick = NodeId(static_cast<std::uint32_t>(std::uniform_int_distribution<std::size_t>(0, next - 1)(rng)));
      } else {
        pick = endpoints[std::uniform_int_distribution<std::size_t>(0, endpoints.size() - 1)(rng)];
      }
      if (std::find(targets.begin(), targets.end(), pick) == targets.end()) targets.push_back(pick);
    }
    const NodeId v = g.add_node();
    for (NodeId t : targets) {
      g.add_edge(v, t);
      endpoints.push_back(v);
      endpoints.push_back(t);
    }
  }
  return g;
}

std::size_t ba_attachment_for_mean_degree(std::size_t n, double mean_degree) {
  std::size_t best = 1;
  double best_gap = std::numeric_limits<double>::infinity();
  for (std::size_t m = 1; m < n; ++m) {
    const double mean = 2.0 * static_cast<double>(m) * static_cast<double>(n - m) / static_cast<double>(n);
    const double gap = std::abs(mean - mean_degree);
    if (gap < best_gap) {
      best_gap = gap;
      best = m;
    }
    if (mean > mean_degree) break;
  }
  return best;
}

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  Graph g(n);
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = u + 1; v < n; ++v) {
      if (coin(rng)) g.add_edge(NodeId(u), NodeId(v));
    }
  }
  return g;
}

Graph path_graph(std::size_t n) {
  Graph g(n);
  for (std::uint32_t i = 1; i < n; ++i) g.add_edge(NodeId(i - 1), NodeId(i));
  return g;
}

Graph cycle_graph(std::size_t n) {
  Graph g = path_graph(n);
  if (n > 2) g.add_edge(NodeId(static_cast<std::uint32_t>(n - 1)), NodeId(0));
  return g;
}

Graph star_graph(std::size_t leaves) {
  Graph g(leaves + 1);
  for (std::uint32_t i = 1; i <= leaves; ++i) g.add_edge(NodeId(0), NodeId(i));
  return g;
}

Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = u + 1; v < n; ++v) g.add_edge(NodeId(u), NodeId(v));
  }
  return g;
}

Graph read_edge_list(std::istream& in) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  std::uint32_t max_id = 0;
  bool any = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    long long u = 0;
    long long v = 0;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!(fields >> u)) throw Error(Errc::ParseError, "edge list line " + std::to_string(line_no) + ": expected 'u v'");
    std::string rest;
    if (!(fields >> v) || u < 0 || v < 0 || (fields >> rest)) {
      throw Error(Errc::ParseError, "edge list line " + std::to_string(line_no) + ": expected 'u v'");
    }
    pairs.emplace_back(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
    max_id = std::max({max_id, pairs.back().first, pairs.back().second});
    any = true;
  }
  Graph g(any ? max_id + 1 : 0);
  for (const auto& [u, v] : pairs) g.add_edge(NodeId(u), NodeId(v));
  return g;
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# nodes " << g.node_count() << " edges " << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

}  // namespace probe
