#include "probe/weights.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "probe/error.hpp"

namespace probe {

AttackerView::AttackerView(OracleSession& session) : session_(session) {
  if (!session_.controlled().empty()) {
    throw Error(Errc::BadParams, "attacker view must be opened before any profile is created");
  }
  mirror_.add_node();
  session_ids_.push_back(session_.target());
  local_.emplace(session_.target(), NodeId(0));
}

NodeId AttackerView::create_profile() {
  const NodeId id = session_.create_profile();
  const NodeId loc = mirror_.add_node();
  session_ids_.push_back(id);
  local_.emplace(id, loc);
  return id;
}

bool AttackerView::link(NodeId u, NodeId v) {
  const bool added = session_.pair_action(u, v);
  mirror_.add_edge(local(u), local(v));
  return added;
}

NodeId AttackerView::local(NodeId session_id) const {
  const auto it = local_.find(session_id);
  if (it == local_.end()) throw Error(Errc::UnknownNode, "node " + std::to_string(session_id.value) + " not in view");
  return it->second;
}

std::vector<double> AttackerView::impact(std::span<const CentralityKind> kinds, NodeId probe, bool allow_global) const {
  const NodeId center = local(probe);
  std::vector<double> out;
  out.reserve(kinds.size());
  for (auto kind : kinds) {
    if (const auto k = locality(kind)) {
      const auto ball = k_hop_induced(mirror_, center, *k);
      out.push_back(compute(kind, ball.graph)[ball.center.index()]);
    } else if (allow_global) {
      const NodeId only[] = {center};
      out.push_back(compute_for(kind, mirror_, only)[center.index()]);
    } else {
      throw Error(Errc::ImpactUnavailable,
                  std::string(to_string(kind)) + " has no finite locality; its impact needs the hidden world");
    }
  }
  return out;
}

namespace {

void add_leaves(AttackerView& view, ScriptState& state, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    const NodeId leaf = view.create_profile();
    view.link(leaf, state.probe);
    state.attached.push_back(leaf);
  }
}

}  // namespace

OperationScript leaf_script(std::size_t fan) {
  OperationScript s;
  s.name = "leaf";
  s.cost_per_application = 1;
  s.prepare = [fan](AttackerView& view, ScriptState& state) { add_leaves(view, state, fan); };
  s.apply = [](AttackerView& view, ScriptState& state) {
    add_leaves(view, state, 1);
    return true;
  };
  return s;
}

OperationScript neighbor_script(std::size_t per_application) {
  if (per_application == 0) throw Error(Errc::BadParams, "neighbor script needs at least one leaf per application");
  OperationScript s;
  s.name = "neighbors" + std::to_string(per_application);
  s.cost_per_application = per_application;
  s.apply = [per_application](AttackerView& view, ScriptState& state) {
    add_leaves(view, state, per_application);
    return true;
  };
  return s;
}

OperationScript clustering_script(std::size_t fan) {
  OperationScript s;
  s.name = "clustering";
  s.cost_per_application = 1;
  s.prepare = [fan](AttackerView& view, ScriptState& state) {
    add_leaves(view, state, fan);
    std::vector<NodeId> around;
    for (NodeId loc : view.mirror().neighbors(view.local(state.probe))) around.push_back(view.session_ids()[loc.index()]);
    std::sort(around.begin(), around.end());
    state.pending_pairs.clear();
    for (std::size_t a = 0; a < around.size(); ++a) {
      for (std::size_t b = a + 1; b < around.size(); ++b) {
        NodeId u = around[a];
        NodeId v = around[b];
        if (view.mirror().has_edge(view.local(u), view.local(v))) continue;
        if (u == view.target()) std::swap(u, v);
        state.pending_pairs.emplace_back(u, v);
      }
    }
    std::shuffle(state.pending_pairs.begin(), state.pending_pairs.end(), state.rng);
  };
  s.apply = [](AttackerView& view, ScriptState& state) {
    if (state.pending_pairs.empty()) return false;
    const auto [u, v] = state.pending_pairs.back();
    state.pending_pairs.pop_back();
    view.link(u, v);
    return true;
  };
  return s;
}

OperationScript single_action_script() {
  OperationScript s;
  s.name = "single";
  s.cost_per_application = 0;
  s.apply = [](AttackerView& view, ScriptState& state) {
    view.session().single_action(state.probe);
    return true;
  };
  return s;
}

std::vector<NodeId> setup_probes(AttackerView& view, std::size_t d) {
  if (d < 2) throw Error(Errc::BadParams, "weight estimation needs at least two probes");
  std::vector<NodeId> probes;
  probes.reserve(d);
  for (std::size_t i = 0; i < d; ++i) {
    const NodeId p = view.create_profile();
    view.link(p, view.target());
    probes.push_back(p);
  }
  return probes;
}

WeightProbe::WeightProbe(AttackerView& view, std::vector<CentralityKind> kinds, std::vector<OperationScript> scripts,
                         std::uint64_t seed, bool allow_global)
    : view_(view), kinds_(std::move(kinds)), scripts_(std::move(scripts)), seed_(seed), allow_global_(allow_global) {
  if (kinds_.size() < 2) throw Error(Errc::BadParams, "weight estimation needs at least two kinds");
  if (scripts_.size() != kinds_.size()) throw Error(Errc::BadParams, "one script per kind is required");
  for (const auto& s : scripts_) {
    if (!s.apply) throw Error(Errc::BadParams, "script '" + s.name + "' has no apply step");
  }
}

void WeightProbe::setup() {
  probes_ = setup_probes(view_, scripts_.size());
  states_.clear();
  history_.assign(scripts_.size(), {});
  const auto before = view_.session().budget_report().pair_actions;
  for (std::size_t i = 0; i < scripts_.size(); ++i) {
    std::seed_seq seq{seed_, static_cast<std::uint64_t>(i)};
    ScriptState state;
    state.probe = probes_[i];
    state.rng.seed(seq);
    states_.push_back(std::move(state));
    if (scripts_[i].prepare) scripts_[i].prepare(view_, states_[i]);
  }
  preparation_pair_actions_ = view_.session().budget_report().pair_actions - before;
  for (std::size_t i = 0; i < scripts_.size(); ++i) history_[i].push_back(view_.impact(kinds_, probes_[i], allow_global_));
}

bool WeightProbe::apply(std::size_t script) {
  if (!scripts_[script].apply(view_, states_[script])) return false;
  ++states_[script].applications;
  history_[script].push_back(view_.impact(kinds_, probes_[script], allow_global_));
  return true;
}

std::vector<std::size_t> WeightProbe::reorder_by_impact() {
  if (probes_.empty()) throw Error(Errc::BadParams, "reorder before setup");
  for (std::size_t i = 0; i < scripts_.size(); ++i) {
    if (!apply(i)) throw Error(Errc::BadParams, "script '" + scripts_[i].name + "' cannot be applied once");
  }
  const Ranking r = restrict(view_.session().observed_ranking(), probes_);
  const auto& top = r.classes().front();
  if (top.size() > 1) {
    throw Error(Errc::NoDominantOperation,
                std::to_string(top.size()) + " probes tie at the top after one application each");
  }
  const auto top_index = static_cast<std::size_t>(std::find(probes_.begin(), probes_.end(), top.front()) - probes_.begin());
  std::vector<std::size_t> perm;
  for (std::size_t i = 0; i < scripts_.size(); ++i) {
    if (i != top_index) perm.push_back(i);
  }
  perm.push_back(top_index);

  auto permute = [&perm](auto& v) {
    std::remove_reference_t<decltype(v)> out;
    out.reserve(v.size());
    for (auto p : perm) out.push_back(std::move(v[p]));
    v = std::move(out);
  };
  permute(scripts_);
  permute(states_);
  permute(probes_);
  permute(history_);
  return perm;
}

ThresholdVector WeightProbe::threshold_search(std::size_t x_max) {
  if (x_max < 1) throw Error(Errc::BadParams, "x_max must be at least 1");
  const std::size_t d = scripts_.size();
  const NodeId reference = probes_.back();
  ThresholdVector k(d - 1, 0);
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i + 1 < d; ++i) {
    if (states_[i].applications < 1) throw Error(Errc::BadParams, "threshold search before reorder");
    active.push_back(i);
  }
  auto dominated = [&](std::size_t i) {
    const auto x = states_[i].applications;
    std::ostringstream msg;
    msg << "operation '" << scripts_[i].name << "' (position " << i << ") stays below the reference after " << x
        << " applications; its weighted impact is less than 1/" << x << " of the reference's";
    return Error(Errc::OperationDominated, msg.str());
  };
  while (!active.empty()) {
    for (auto i : active) {
      if (states_[i].applications >= x_max || !apply(i)) throw dominated(i);
    }
    const Ranking r = view_.session().observed_ranking();
    std::vector<std::size_t> still;
    for (auto i : active) {
      if (r.better(reference, probes_[i])) {
        still.push_back(i);
      } else {
        k[i] = states_[i].applications - 1;
      }
    }
    active = std::move(still);
  }
  return k;
}

ImpactMatrix WeightProbe::assemble_J(const ThresholdVector& k) const { return probe::assemble_J(history_, k); }

ImpactMatrix assemble_J(const std::vector<std::vector<std::vector<double>>>& history, const ThresholdVector& k) {
  const std::size_t d = history.size();
  if (d < 2 || k.size() != d - 1) throw Error(Errc::BadParams, "need d >= 2 histories and d-1 thresholds");
  if (history.back().size() < 2) throw Error(Errc::ImpactUnavailable, "reference impact after one application missing");
  const auto& ref = history.back()[1];
  ImpactMatrix out{Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(ref.size()))};
  for (std::size_t i = 0; i + 1 < d; ++i) {
    if (k[i] >= history[i].size()) {
      throw Error(Errc::ImpactUnavailable, "impact of operation " + std::to_string(i) + " at x=" + std::to_string(k[i]) +
                                               " was not recorded");
    }
    const auto& row = history[i][k[i]];
    if (row.size() != ref.size()) throw Error(Errc::BadParams, "impact vectors differ in length");
    for (std::size_t j = 0; j < ref.size(); ++j) out.J(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j] - ref[j];
  }
  if (out.J.isZero(0.0)) throw Error(Errc::DegenerateJ, "impact matrix is identically zero");
  return out;
}

WeightEstimate kernel_direction(const ImpactMatrix& m, std::size_t reference) {
  const Eigen::MatrixXd& J = m.J;
  const auto d = J.cols();
  if (d < 1 || static_cast<Eigen::Index>(reference) >= d) throw Error(Errc::BadParams, "reference index out of range");
  if (!J.allFinite()) throw Error(Errc::BadParams, "impact matrix has non-finite entries");

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeFullV);
  Eigen::VectorXd sv = Eigen::VectorXd::Zero(d);
  sv.head(svd.singularValues().size()) = svd.singularValues();
  const double largest = sv(0);
  if (!(largest > 0.0)) throw Error(Errc::DegenerateKernel, "impact matrix is zero");
  if (d >= 2 && sv(d - 2) - sv(d - 1) <= 1e-9 * largest) {
    throw Error(Errc::DegenerateKernel, "two smallest singular values coincide; kernel direction is not unique");
  }
  const Eigen::VectorXd u = svd.matrixV().col(d - 1);
  const double pivot = u(static_cast<Eigen::Index>(reference));
  if (std::abs(pivot) < 1e-9) throw Error(Errc::ReferenceZero, "reference coefficient vanishes in the kernel direction");

  WeightEstimate est;
  est.h_hat = u / pivot;
  est.reference = reference;
  est.residual = (J * u).norm() / J.norm();
  est.singular_values = sv;
  return est;
}

WeightRun estimate_weights(OracleSession& session, std::vector<CentralityKind> kinds, std::vector<OperationScript> scripts,
                           const EstimateOptions& options) {
  AttackerView view(session);
  WeightProbe probe(view, std::move(kinds), std::move(scripts), options.seed, options.allow_global);
  probe.setup();
  WeightRun run;
  run.permutation = probe.reorder_by_impact();
  run.thresholds = probe.threshold_search(options.x_max);
  run.estimate = kernel_direction(probe.assemble_J(run.thresholds), options.reference_kind);
  for (const auto& s : probe.scripts()) run.script_order.push_back(s.name);

  run.budget = session.budget_report();
  run.preparation_pair_actions = probe.preparation_pair_actions();
  run.operation_pair_actions = run.budget.pair_actions - run.preparation_pair_actions;
  const auto& sc = probe.scripts();
  const std::size_t d = sc.size();
  run.cost_bound = 2 * d + sc.back().cost_per_application;
  for (std::size_t i = 0; i + 1 < d; ++i) run.cost_bound += run.thresholds[i] * sc[i].cost_per_application;
  return run;
}

}  // namespace probe
