#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "probe/graph.hpp"

namespace probe {

enum class CentralityKind { Degree, Eccentricity, Betweenness, Pagerank, Closeness, Clustering };

inline constexpr std::array kAllKinds = {CentralityKind::Degree,     CentralityKind::Eccentricity,
                                         CentralityKind::Betweenness, CentralityKind::Pagerank,
                                         CentralityKind::Closeness,  CentralityKind::Clustering};

/// The five classic centralities used as the default candidate set.
inline constexpr std::array kBaseKinds = {CentralityKind::Degree, CentralityKind::Eccentricity,
                                          CentralityKind::Betweenness, CentralityKind::Pagerank,
                                          CentralityKind::Closeness};

std::string_view to_string(CentralityKind kind);
CentralityKind parse_kind(std::string_view name);

inline constexpr double kDefaultTieTolerance = 1e-9;
inline constexpr double kPagerankDamping = 0.85;
inline constexpr double kPagerankTolerance = 1e-12;

/// Per-node scores; larger is always more central. Indexed by NodeId::index().
using Scores = std::vector<double>;

/// Throws DisconnectedGraph for Eccentricity/Closeness on a disconnected graph.
Scores compute(CentralityKind kind, const Graph& g);

/// Like compute, but only the entries for `nodes` are guaranteed meaningful.
/// Distance-based kinds run BFS from those nodes only.
Scores compute_for(CentralityKind kind, const Graph& g, std::span<const NodeId> nodes);

/// Row-per-node matrix of centrality values for an ordered kind set.
struct CentralityVector {
  std::vector<CentralityKind> kinds;
  std::vector<std::vector<double>> values;  // values[node][kind index]

  std::size_t dimension() const { return kinds.size(); }
};

/// Shares BFS work between the distance-based kinds.
CentralityVector compute_vector(std::span<const CentralityKind> kinds, const Graph& g);

/// k for k-local kinds, std::nullopt when no finite k exists.
std::optional<unsigned> locality(CentralityKind kind);

/// Total preorder over a node set, best class first.
class Ranking {
 public:
  Ranking() = default;
  explicit Ranking(std::vector<std::vector<NodeId>> classes);

  const std::vector<std::vector<NodeId>>& classes() const { return classes_; }
  std::size_t size() const;
  bool contains(NodeId v) const;

  /// Class index of v; throws UnknownNode if v is not ranked.
  std::size_t class_of(NodeId v) const;

  bool better(NodeId a, NodeId b) const { return class_of(a) < class_of(b); }
  bool tied(NodeId a, NodeId b) const { return class_of(a) == class_of(b); }

  bool operator==(const Ranking&) const = default;

 private:
  std::vector<std::vector<NodeId>> classes_;  // members sorted by id within a class
};

/// Sorts descending; neighbours in sorted order tie when
/// |s_i - s_j| <= tie_tol * max(1, |s_i|, |s_j|).
Ranking rank_from_scores(std::span<const double> scores, double tie_tol = kDefaultTieTolerance);

/// Same, over a subset of nodes only.
Ranking rank_from_scores(std::span<const double> scores, std::span<const NodeId> nodes,
                         double tie_tol = kDefaultTieTolerance);

Ranking restrict(const Ranking& r, std::span<const NodeId> nodes);

/// Strict comparison with the same tolerance rule as rank_from_scores.
bool strictly_greater(double a, double b, double tie_tol = kDefaultTieTolerance);

std::string format_ranking(const Ranking& r, std::span<const std::string> labels = {});

}  // namespace probe
