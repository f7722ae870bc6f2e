#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "probe/centrality.hpp"
#include "probe/discrimination.hpp"
#include "probe/graph.hpp"
#include "probe/oracle.hpp"
#include "probe/weights.hpp"

namespace probe {

enum class ExperimentMode { Warmup, Identify, Weights };

struct WorldSpec {
  std::string type = "ba";            // "ba" | "edgelist" | "fixture"
  std::vector<std::size_t> sizes{1000};
  std::optional<std::size_t> m;       // attachment count; derived from mean_degree when unset
  double mean_degree = 5.0;
  std::string path;                   // edge list for type "edgelist"
};

struct ExperimentConfig {
  ExperimentMode mode = ExperimentMode::Weights;
  WorldSpec world;
  std::vector<CentralityKind> kinds;        // candidates (identify) or recipe kinds (weights)
  std::vector<HiddenRecipe> recipes;        // identify only
  std::vector<std::string> scripts{"clustering", "leaf"};
  std::vector<double> h2_values{1, 2, 3, 4, 5};
  std::vector<std::size_t> query_sizes{10, 20, 40, 80};
  std::vector<std::uint64_t> seeds;
  std::size_t x_max = 10000;
  std::size_t reference_kind = 0;
  BudgetLimits limits;
  std::string certificate_store;  // identify: load if present, otherwise search and save
  std::string out_dir;
  unsigned threads = 1;
};

/// Throws ParseError on malformed input and BadParams on inconsistent values.
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);
ExperimentConfig default_config(ExperimentMode mode);

/// BA world for one seed, or the edge list / fixture the world description names.
Graph build_world(const WorldSpec& spec, std::size_t size, std::uint64_t seed);

/// Deterministic target node for a seed.
NodeId pick_target(const Graph& world, std::uint64_t seed);

struct WarmupReport {
  std::map<CentralityKind, Ranking> observed;
  std::map<CentralityKind, Ranking> expected;
  bool matches = false;
  bool distinct = false;
  bool pass() const { return matches && distinct; }
};

WarmupReport check_warmup(const WarmupFixture& fixture);
void print_warmup(std::ostream& out, const WarmupReport& report);

struct IdentifyRow {
  std::size_t world_size = 0;
  std::uint64_t seed = 0;
  std::string recipe;
  std::string verdict;  // kind name, or the error code
  bool scored = false;   // recipe is a single candidate kind, so a verdict can be right or wrong
  bool correct = false;
  BudgetCounter budget;
};

struct IdentifyCampaign {
  std::vector<IdentifyRow> rows;
  std::size_t correct = 0;
  std::size_t scored = 0;  // rows whose recipe is a single candidate kind
};

/// Loads the store when it exists, otherwise searches and (when a path is given) saves it.
CertificateSet obtain_certificates(std::span<const CentralityKind> kinds, const std::string& store_path);

IdentifyCampaign run_identify(const ExperimentConfig& config, const CertificateSet& certs);
void write_identify_csv(std::ostream& out, const IdentifyCampaign& result);

struct WeightRow {
  double h2 = 0.0;
  std::size_t query_size = 0;
  std::uint64_t seed = 0;
  std::vector<double> true_h;
  std::vector<double> est_h;  // empty when the run failed
  double residual = 0.0;
  std::vector<std::size_t> thresholds;
  std::string status = "ok";
  BudgetCounter budget;
  std::uint64_t preparation_pair_actions = 0;
  std::uint64_t operation_pair_actions = 0;
  std::uint64_t cost_bound = 0;
  bool within_bound = true;
};

struct WeightCell {
  double h2 = 0.0;
  std::size_t query_size = 0;
  std::size_t runs = 0;
  double mean = 0.0;
  double stdev = 0.0;  // sample standard deviation of the estimated second weight
  double mean_residual = 0.0;
};

struct WeightSweep {
  std::vector<WeightRow> rows;    // sorted by (h2, query_size, seed)
  std::vector<WeightCell> cells;  // sorted by (h2, query_size)
};

OperationScript script_by_name(const std::string& name, std::size_t query_size);

/// One weight-recovery run on a fresh session.
WeightRow run_weight_point(const Graph& world, NodeId target, const std::vector<CentralityKind>& kinds,
                           const std::vector<double>& true_h, const ExperimentConfig& config, std::size_t query_size,
                           std::uint64_t seed);

WeightSweep run_weights(const ExperimentConfig& config);
std::vector<WeightCell> summarize(const std::vector<WeightRow>& rows);

void write_weights_csv(std::ostream& out, const WeightSweep& sweep, std::size_t d);
void write_summary_csv(std::ostream& out, const WeightSweep& sweep);
void write_gnuplot(std::ostream& out, const std::string& rows_csv, const std::string& summary_csv);

}  // namespace probe
