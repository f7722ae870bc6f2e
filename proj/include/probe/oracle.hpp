#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "probe/centrality.hpp"
#include "probe/graph.hpp"

namespace probe {

/// The secret scoring rule: f(i) = c_i . weights over `kinds`.
struct HiddenRecipe {
  std::vector<CentralityKind> kinds;
  std::vector<double> weights;

  static HiddenRecipe single(CentralityKind kind) { return {{kind}, {1.0}}; }

  /// Throws InvalidRecipe on empty, mismatched or all-zero weights.
  void validate() const;
};

struct BudgetLimits {
  std::optional<std::uint64_t> profile_creations;
  std::optional<std::uint64_t> pair_actions;
  std::optional<std::uint64_t> rank_queries;
  std::optional<std::uint64_t> single_actions;
};

struct BudgetCounter {
  std::uint64_t profile_creations = 0;
  std::uint64_t pair_actions = 0;
  std::uint64_t rank_queries = 0;
  std::uint64_t single_actions = 0;
  BudgetLimits limits;

  std::uint64_t total() const { return profile_creations + pair_actions + rank_queries + single_actions; }
};

/// One adversary's view of the ranking service. The recipe and every node
/// outside the controlled set stay behind this boundary.
class OracleSession {
 public:
  /// Throws UnknownNode, DisconnectedWorld or InvalidRecipe.
  OracleSession(Graph world, NodeId target, HiddenRecipe recipe, BudgetLimits limits = {},
                double tie_tol = kDefaultTieTolerance);

  NodeId target() const { return target_; }
  const std::vector<NodeId>& controlled() const { return controlled_; }
  bool is_controlled(NodeId v) const;

  NodeId create_profile();

  /// u must be controlled; v controlled or the target. Returns false for a duplicate edge.
  bool pair_action(NodeId u, NodeId v);

  /// Posting-style action on a profile. Counted, but has no effect on topology.
  void single_action(NodeId u);

  /// Ranking of the controlled profiles, restricted from the ranking of all nodes.
  Ranking observed_ranking();

  BudgetCounter budget_report() const { return budget_; }

 private:
  void charge(std::uint64_t& counter, const std::optional<std::uint64_t>& limit, const char* what);

  Graph world_;
  NodeId target_;
  HiddenRecipe recipe_;
  double tie_tol_;
  std::size_t original_nodes_;
  std::vector<NodeId> controlled_;
  std::vector<char> controlled_mask_;
  BudgetCounter budget_;
};

HiddenRecipe recipe_from_json(const nlohmann::json& j);
nlohmann::json recipe_to_json(const HiddenRecipe& recipe);
BudgetLimits limits_from_json(const nlohmann::json& j);

}  // namespace probe
