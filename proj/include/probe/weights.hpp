#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "probe/centrality.hpp"
#include "probe/graph.hpp"
#include "probe/oracle.hpp"

namespace probe {

/// What the querying user knows: the profiles it created, the target, and
/// every edge it added. All mutations go through the session and are mirrored.
class AttackerView {
 public:
  explicit AttackerView(OracleSession& session);

  OracleSession& session() { return session_; }
  NodeId target() const { return session_.target(); }

  NodeId create_profile();
  bool link(NodeId u, NodeId v);

  /// Mirror graph; local node 0 is the target, the rest are profiles in creation order.
  const Graph& mirror() const { return mirror_; }
  NodeId local(NodeId session_id) const;
  /// Session id of every mirror node, indexed by local id.
  const std::vector<NodeId>& session_ids() const { return session_ids_; }

  /// Centrality values of `probe` for each kind, evaluated on the probe's
  /// locality ball inside the mirror. Throws ImpactUnavailable for kinds with
  /// no finite locality unless `allow_global` is set, in which case the whole
  /// mirror is used as an approximation.
  std::vector<double> impact(std::span<const CentralityKind> kinds, NodeId probe, bool allow_global = false) const;

 private:
  OracleSession& session_;
  Graph mirror_;
  std::vector<NodeId> session_ids_;
  std::unordered_map<NodeId, NodeId> local_;
};

/// Per-probe bookkeeping owned by the estimator.
struct ScriptState {
  NodeId probe;
  std::vector<NodeId> attached;
  std::vector<std::pair<NodeId, NodeId>> pending_pairs;
  std::size_t applications = 0;
  std::mt19937_64 rng;
};

/// A repeatable topological operation u_i applied to one probe.
struct OperationScript {
  std::string name;
  std::uint64_t cost_per_application = 1;  // pair actions per application
  /// One-off preparation of the probe, applied before the first application.
  std::function<void(AttackerView&, ScriptState&)> prepare;
  /// Returns false when the operation can no longer be applied.
  std::function<bool(AttackerView&, ScriptState&)> apply;
};

/// Attaches `fan` leaves during preparation; each application attaches one more.
OperationScript leaf_script(std::size_t fan = 0);

/// Attaches `per_application` fresh leaves per application.
OperationScript neighbor_script(std::size_t per_application);

/// Attaches `fan` leaves during preparation; each application links one random
/// not-yet-adjacent pair among the probe's neighbours (leaves and target),
/// raising the probe's clustering.
OperationScript clustering_script(std::size_t fan);

/// Ignores topology entirely; stands in for posting-style actions.
OperationScript single_action_script();

using ThresholdVector = std::vector<std::size_t>;

struct ImpactMatrix {
  Eigen::MatrixXd J;
};

struct WeightEstimate {
  Eigen::VectorXd h_hat;           // h_hat[reference] == 1
  std::size_t reference = 0;
  double residual = 0.0;           // ||J u|| / ||J||_F for the unit direction u
  Eigen::VectorXd singular_values; // descending
};

/// Creates d profiles, each bridged to the target only. Requires d >= 2.
std::vector<NodeId> setup_probes(AttackerView& view, std::size_t d);

/// Runs one weight estimation step by step. History entries hold
/// the probe's centrality vector after x applications of its script.
class WeightProbe {
 public:
  WeightProbe(AttackerView& view, std::vector<CentralityKind> kinds, std::vector<OperationScript> scripts,
              std::uint64_t seed, bool allow_global = false);

  /// Creates and bridges the probes, then runs each script's preparation.
  void setup();

  /// Applies every script once, then permutes scripts so that the last probe
  /// is strictly top among the probes. Throws NoDominantOperation.
  std::vector<std::size_t> reorder_by_impact();

  /// Largest x with u_i^x(a_i) <_r u_d(a_d), for every i < d. Throws OperationDominated.
  ThresholdVector threshold_search(std::size_t x_max);

  ImpactMatrix assemble_J(const ThresholdVector& k) const;

  const std::vector<CentralityKind>& kinds() const { return kinds_; }
  const std::vector<OperationScript>& scripts() const { return scripts_; }
  const std::vector<NodeId>& probes() const { return probes_; }
  const std::vector<std::vector<std::vector<double>>>& history() const { return history_; }
  std::uint64_t preparation_pair_actions() const { return preparation_pair_actions_; }

 private:
  bool apply(std::size_t script);

  AttackerView& view_;
  std::vector<CentralityKind> kinds_;
  std::vector<OperationScript> scripts_;
  std::vector<ScriptState> states_;
  std::vector<NodeId> probes_;
  std::vector<std::vector<std::vector<double>>> history_;
  std::uint64_t seed_;
  bool allow_global_;
  std::uint64_t preparation_pair_actions_ = 0;
};

/// J from recorded impacts: row i = history[i][k_i] - history[d-1][1], last row zero.
ImpactMatrix assemble_J(const std::vector<std::vector<std::vector<double>>>& history, const ThresholdVector& k);

/// Unit direction minimising ||J h||, rescaled so h[reference] = 1.
/// Throws DegenerateKernel or ReferenceZero.
WeightEstimate kernel_direction(const ImpactMatrix& J, std::size_t reference);

struct WeightRun {
  WeightEstimate estimate;
  ThresholdVector thresholds;
  std::vector<std::size_t> permutation;  // permutation[p] = original index of script at position p
  std::vector<std::string> script_order;
  BudgetCounter budget;
  std::uint64_t preparation_pair_actions = 0;
  std::uint64_t operation_pair_actions = 0;  // everything except preparation
  std::uint64_t cost_bound = 0;              // 2d + cost(u_d) + sum k_i cost(u_i)
  bool within_bound() const { return operation_pair_actions <= cost_bound; }
};

struct EstimateOptions {
  std::size_t x_max = 10000;
  std::size_t reference_kind = 0;
  std::uint64_t seed = 0;
  bool allow_global = false;
};

/// Full pipeline: setup, reorder, thresholds, J, kernel.
WeightRun estimate_weights(OracleSession& session, std::vector<CentralityKind> kinds,
                           std::vector<OperationScript> scripts, const EstimateOptions& options = {});

}  // namespace probe
