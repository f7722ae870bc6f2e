#include "probe/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "probe/error.hpp"

namespace probe {

std::string_view to_string(CentralityKind kind) {
  switch (kind) {
    case CentralityKind::Degree: return "degree";
    case CentralityKind::Eccentricity: return "eccentricity";
    case CentralityKind::Betweenness: return "betweenness";
    case CentralityKind::Pagerank: return "pagerank";
    case CentralityKind::Closeness: return "closeness";
    case CentralityKind::Clustering: return "clustering";
  }
  return "unknown";
}

CentralityKind parse_kind(std::string_view name) {
  for (auto kind : kAllKinds) {
    if (to_string(kind) == name) return kind;
  }
  throw Error(Errc::ParseError, "unknown centrality '" + std::string(name) + "'");
}

std::optional<unsigned> locality(CentralityKind kind) {
  switch (kind) {
    case CentralityKind::Degree:
    case CentralityKind::Clustering:
      return 1U;
    default:
      return std::nullopt;
  }
}

namespace {

Scores degree_scores(const Graph& g) {
  Scores s(g.node_count());
  for (std::size_t v = 0; v < s.size(); ++v) s[v] = static_cast<double>(g.degree(NodeId(static_cast<std::uint32_t>(v))));
  return s;
}

// Forward triangle counting: each edge is oriented toward the endpoint of
// higher (degree, id), so every triangle is found exactly once.
Scores clustering_scores(const Graph& g) {
  const std::size_t n = g.node_count();
  auto ahead = [&g](NodeId a, NodeId b) {
    const auto da = g.degree(a);
    const auto db = g.degree(b);
    return da != db ? da < db : a < b;
  };
  std::vector<std::vector<NodeId>> out(n);
  for (std::uint32_t v = 0; v < n; ++v) {
    for (NodeId u : g.neighbors(NodeId(v))) {
      if (ahead(NodeId(v), u)) out[v].push_back(u);
    }
  }
  std::vector<std::size_t> triangles(n, 0);
  std::vector<std::uint32_t> mark(n, kUnreachable);
  for (std::uint32_t v = 0; v < n; ++v) {
    for (NodeId u : out[v]) mark[u.index()] = v;
    for (NodeId u : out[v]) {
      for (NodeId w : out[u.index()]) {
        if (mark[w.index()] == v) {
          ++triangles[v];
          ++triangles[u.index()];
          ++triangles[w.index()];
        }
      }
    }
  }
  Scores s(n, 0.0);
  for (std::uint32_t v = 0; v < n; ++v) {
    const double k = static_cast<double>(g.degree(NodeId(v)));
    if (k >= 2.0) s[v] = 2.0 * static_cast<double>(triangles[v]) / (k * (k - 1.0));
  }
  return s;
}

// Brandes accumulation; each unordered pair is visited twice over all sources.
Scores betweenness_scores(const Graph& g) {
  const std::size_t n = g.node_count();
  Scores bc(n, 0.0);
  std::vector<std::uint32_t> dist(n);
  std::vector<double> sigma(n);
  std::vector<double> delta(n);
  std::vector<NodeId> order;
  order.reserve(n);
  for (std::uint32_t s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kUnreachable);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    order.clear();
    dist[s] = 0;
    sigma[s] = 1.0;
    order.push_back(NodeId(s));
    for (std::size_t head = 0; head < order.size(); ++head) {
      const NodeId u = order[head];
      for (NodeId w : g.neighbors(u)) {
        if (dist[w.index()] == kUnreachable) {
          dist[w.index()] = dist[u.index()] + 1;
          order.push_back(w);
        }
        if (dist[w.index()] == dist[u.index()] + 1) sigma[w.index()] += sigma[u.index()];
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const NodeId w = *it;
      for (NodeId u : g.neighbors(w)) {
        if (dist[u.index()] + 1 == dist[w.index()]) {
          delta[u.index()] += sigma[u.index()] / sigma[w.index()] * (1.0 + delta[w.index()]);
        }
      }
      if (w.value != s) bc[w.index()] += delta[w.index()];
    }
  }
  if (n > 2) {
    const double scale = 1.0 / (static_cast<double>(n - 1) * static_cast<double>(n - 2));
    for (auto& b : bc) b *= scale;
  } else {
    std::fill(bc.begin(), bc.end(), 0.0);
  }
  return bc;
}

// Power iteration with uniform redistribution of dangling mass.
Scores pagerank_scores(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n == 0) return {};
  const double uniform = 1.0 / static_cast<double>(n);
  Scores x(n, uniform);
  Scores next(n);
  for (int iter = 0; iter < 100000; ++iter) {
    double dangling = 0.0;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (g.degree(NodeId(v)) == 0) dangling += x[v];
    }
    const double base = (1.0 - kPagerankDamping) * uniform + kPagerankDamping * dangling * uniform;
    std::fill(next.begin(), next.end(), base);
    for (std::uint32_t u = 0; u < n; ++u) {
      const auto nbrs = g.neighbors(NodeId(u));
      if (nbrs.empty()) continue;
      const double share = kPagerankDamping * x[u] / static_cast<double>(nbrs.size());
      for (NodeId w : nbrs) next[w.index()] += share;
    }
    double change = 0.0;
    for (std::size_t v = 0; v < n; ++v) change += std::abs(next[v] - x[v]);
    x.swap(next);
    if (change < kPagerankTolerance) break;
  }
  return x;
}

struct DistanceSummary {
  Scores eccentricity;
  Scores closeness;
};

DistanceSummary distance_scores(const Graph& g) {
  const std::size_t n = g.node_count();
  DistanceSummary out{Scores(n, 0.0), Scores(n, 0.0)};
  for (std::uint32_t v = 0; v < n; ++v) {
    const auto dist = bfs_distances(g, NodeId(v));
    std::uint32_t far = 0;
    double total = 0.0;
    for (auto d : dist) {
      if (d == kUnreachable) throw Error(Errc::DisconnectedGraph, "distance-based centrality on disconnected graph");
      far = std::max(far, d);
      total += d;
    }
    out.eccentricity[v] = -static_cast<double>(far);
    out.closeness[v] = total > 0.0 ? static_cast<double>(n - 1) / total : 0.0;
  }
  return out;
}

}  // namespace

Scores compute(CentralityKind kind, const Graph& g) {
  switch (kind) {
    case CentralityKind::Degree: return degree_scores(g);
    case CentralityKind::Clustering: return clustering_scores(g);
    case CentralityKind::Betweenness: return betweenness_scores(g);
    case CentralityKind::Pagerank: return pagerank_scores(g);
    case CentralityKind::Eccentricity: return distance_scores(g).eccentricity;
    case CentralityKind::Closeness: return distance_scores(g).closeness;
  }
  return {};
}

Scores compute_for(CentralityKind kind, const Graph& g, std::span<const NodeId> nodes) {
  if (kind != CentralityKind::Eccentricity && kind != CentralityKind::Closeness) return compute(kind, g);
  const std::size_t n = g.node_count();
  Scores s(n, 0.0);
  for (NodeId v : nodes) {
    const auto dist = bfs_distances(g, v);
    std::uint32_t far = 0;
    double total = 0.0;
    for (auto d : dist) {
      if (d == kUnreachable) throw Error(Errc::DisconnectedGraph, "distance-based centrality on disconnected graph");
      far = std::max(far, d);
      total += d;
    }
    s[v.index()] = kind == CentralityKind::Eccentricity ? -static_cast<double>(far)
                   : total > 0.0                       ? static_cast<double>(n - 1) / total
                                                       : 0.0;
  }
  return s;
}

CentralityVector compute_vector(std::span<const CentralityKind> kinds, const Graph& g) {
  CentralityVector out;
  out.kinds.assign(kinds.begin(), kinds.end());
  out.values.assign(g.node_count(), std::vector<double>(kinds.size(), 0.0));
  std::optional<DistanceSummary> distances;
  for (std::size_t k = 0; k < kinds.size(); ++k) {
    Scores s;
    if (kinds[k] == CentralityKind::Eccentricity || kinds[k] == CentralityKind::Closeness) {
      if (!distances) distances = distance_scores(g);
      s = kinds[k] == CentralityKind::Eccentricity ? distances->eccentricity : distances->closeness;
    } else {
      s = compute(kinds[k], g);
    }
    for (std::size_t v = 0; v < s.size(); ++v) out.values[v][k] = s[v];
  }
  return out;
}

bool strictly_greater(double a, double b, double tie_tol) {
  return a > b && std::abs(a - b) > tie_tol * std::max({1.0, std::abs(a), std::abs(b)});
}

Ranking::Ranking(std::vector<std::vector<NodeId>> classes) : classes_(std::move(classes)) {
  for (auto& c : classes_) std::sort(c.begin(), c.end());
  std::erase_if(classes_, [](const auto& c) { return c.empty(); });
}

std::size_t Ranking::size() const {
  std::size_t total = 0;
  for (const auto& c : classes_) total += c.size();
  return total;
}

bool Ranking::contains(NodeId v) const {
  return std::any_of(classes_.begin(), classes_.end(),
                     [v](const auto& c) { return std::binary_search(c.begin(), c.end(), v); });
}

std::size_t Ranking::class_of(NodeId v) const {
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    if (std::binary_search(classes_[i].begin(), classes_[i].end(), v)) return i;
  }
  throw Error(Errc::UnknownNode, "node " + std::to_string(v.value) + " is not ranked");
}

Ranking rank_from_scores(std::span<const double> scores, std::span<const NodeId> nodes, double tie_tol) {
  if (tie_tol < 0.0) throw Error(Errc::BadParams, "tie tolerance must be non-negative");
  std::vector<NodeId> order(nodes.begin(), nodes.end());
  for (NodeId v : order) {
    if (v.index() >= scores.size()) throw Error(Errc::UnknownNode, "node " + std::to_string(v.value));
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return scores[a.index()] > scores[b.index()]; });
  std::vector<std::vector<NodeId>> classes;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i == 0 || strictly_greater(scores[order[i - 1].index()], scores[order[i].index()], tie_tol)) {
      classes.emplace_back();
    }
    classes.back().push_back(order[i]);
  }
  return Ranking(std::move(classes));
}

Ranking rank_from_scores(std::span<const double> scores, double tie_tol) {
  std::vector<NodeId> all(scores.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = NodeId(static_cast<std::uint32_t>(i));
  return rank_from_scores(scores, all, tie_tol);
}

Ranking restrict(const Ranking& r, std::span<const NodeId> nodes) {
  constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);
  std::size_t top = 0;
  for (NodeId v : nodes) top = std::max(top, v.index() + 1);
  std::vector<std::size_t> class_index(top, kAbsent);
  for (std::size_t c = 0; c < r.classes().size(); ++c) {
    for (NodeId v : r.classes()[c]) {
      if (v.index() < top) class_index[v.index()] = c;
    }
  }
  std::vector<std::vector<NodeId>> classes(r.classes().size());
  for (NodeId v : nodes) {
    if (class_index[v.index()] == kAbsent) throw Error(Errc::UnknownNode, "node " + std::to_string(v.value) + " is not ranked");
    auto& bucket = classes[class_index[v.index()]];
    if (std::find(bucket.begin(), bucket.end(), v) == bucket.end()) bucket.push_back(v);
  }
  return Ranking(std::move(classes));
}

std::string format_ranking(const Ranking& r, std::span<const std::string> labels) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < r.classes().size(); ++i) {
    if (i > 0) out << " > ";
    const auto& c = r.classes()[i];
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (j > 0) out << " = ";
      if (c[j].index() < labels.size()) {
        out << labels[c[j].index()];
      } else {
        out << c[j].value;
      }
    }
  }
  out << ']';
  return out.str();
}

}  // namespace probe
