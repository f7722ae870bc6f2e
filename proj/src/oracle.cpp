#include "probe/oracle.hpp"

#include <algorithm>

#include "probe/error.hpp"

namespace probe {

void HiddenRecipe::validate() const {
  if (kinds.empty()) throw Error(Errc::InvalidRecipe, "recipe has no centralities");
  if (kinds.size() != weights.size()) throw Error(Errc::InvalidRecipe, "kinds and weights differ in length");
  if (std::all_of(weights.begin(), weights.end(), [](double w) { return w == 0.0; })) {
    throw Error(Errc::InvalidRecipe, "all weights are zero");
  }
}

OracleSession::OracleSession(Graph world, NodeId target, HiddenRecipe recipe, BudgetLimits limits,
                             double tie_tol)
    : world_(std::move(world)), target_(target), recipe_(std::move(recipe)), tie_tol_(tie_tol) {
  recipe_.validate();
  if (!world_.has_node(target_)) throw Error(Errc::UnknownNode, "target " + std::to_string(target_.value));
  if (!is_connected(world_)) throw Error(Errc::DisconnectedWorld, "the world graph must be connected");
  original_nodes_ = world_.node_count();
  controlled_mask_.assign(world_.node_count(), 0);
  budget_.limits = limits;
}

bool OracleSession::is_controlled(NodeId v) const {
  return v.index() < controlled_mask_.size() && controlled_mask_[v.index()] != 0;
}

void OracleSession::charge(std::uint64_t& counter, const std::optional<std::uint64_t>& limit, const char* what) {
  if (limit && counter >= *limit) {
    throw Error(Errc::BudgetExceeded, std::string(what) + " limit " + std::to_string(*limit) + " reached");
  }
  ++counter;
}

NodeId OracleSession::create_profile() {
  charge(budget_.profile_creations, budget_.limits.profile_creations, "profile creation");
  const NodeId v = world_.add_node();
  controlled_.push_back(v);
  controlled_mask_.push_back(1);
  return v;
}

bool OracleSession::pair_action(NodeId u, NodeId v) {
  if (!is_controlled(u)) throw Error(Errc::Forbidden, "node " + std::to_string(u.value) + " is not controlled");
  if (!is_controlled(v) && v != target_) {
    throw Error(Errc::Forbidden, "node " + std::to_string(v.value) + " is neither controlled nor the target");
  }
  if (u == v) throw Error(Errc::SelfLoop, "node " + std::to_string(u.value));
  charge(budget_.pair_actions, budget_.limits.pair_actions, "pair action");
  return world_.add_edge(u, v);
}

void OracleSession::single_action(NodeId u) {
  if (!is_controlled(u)) throw Error(Errc::Forbidden, "node " + std::to_string(u.value) + " is not controlled");
  charge(budget_.single_actions, budget_.limits.single_actions, "single action");
}

Ranking OracleSession::observed_ranking() {
  if (controlled_.empty()) throw Error(Errc::BadParams, "no controlled profiles to rank");
  charge(budget_.rank_queries, budget_.limits.rank_queries, "rank query");
  Scores score(world_.node_count(), 0.0);
  try {
    for (std::size_t k = 0; k < recipe_.kinds.size(); ++k) {
      const Scores s = compute(recipe_.kinds[k], world_);
      for (std::size_t v = 0; v < score.size(); ++v) score[v] += s[v] * recipe_.weights[k];
    }
  } catch (const Error& e) {
    if (e.code() == Errc::DisconnectedGraph) throw Error(Errc::DisconnectedWorld, "a controlled profile is disconnected");
    throw;
  }
  return restrict(rank_from_scores(score, tie_tol_), controlled_);
}

HiddenRecipe recipe_from_json(const nlohmann::json& j) {
  HiddenRecipe r;
  try {
    for (const auto& name : j.at("kinds")) r.kinds.push_back(parse_kind(name.get<std::string>()));
    if (j.contains("weights")) {
      r.weights = j.at("weights").get<std::vector<double>>();
    } else {
      r.weights.assign(r.kinds.size(), 1.0);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("recipe: ") + e.what());
  }
  r.validate();
  return r;
}

nlohmann::json recipe_to_json(const HiddenRecipe& recipe) {
  nlohmann::json kinds = nlohmann::json::array();
  for (auto k : recipe.kinds) kinds.push_back(std::string(to_string(k)));
  return {{"kinds", kinds}, {"weights", recipe.weights}};
}

BudgetLimits limits_from_json(const nlohmann::json& j) {
  BudgetLimits limits;
  const auto read = [&](const char* key, std::optional<std::uint64_t>& slot) {
    if (j.contains(key) && !j.at(key).is_null()) slot = j.at(key).get<std::uint64_t>();
  };
  read("profile_creations", limits.profile_creations);
  read("pair_actions", limits.pair_actions);
  read("rank_queries", limits.rank_queries);
  read("single_actions", limits.single_actions);
  return limits;
}

}  // namespace probe
