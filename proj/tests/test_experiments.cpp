#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "probe/error.hpp"
#include "probe/experiments.hpp"

using namespace probe;
using nlohmann::json;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::ParseError;
}

ExperimentConfig small_weights() {
  return config_from_json(json::parse(R"({
    "mode": "weights",
    "world": {"type": "ba", "n": 300, "m": 3},
    "kinds": ["degree", "clustering"],
    "h2": [1, 4],
    "query_sizes": [8, 12],
    "seeds": [0, 1, 2]
  })"));
}

WeightRow row(double h2, std::size_t q, double est, std::string status = "ok") {
  WeightRow r;
  r.h2 = h2;
  r.query_size = q;
  r.status = std::move(status);
  if (r.status == "ok") r.est_h = {1.0, est};
  return r;
}

}  // namespace

TEST(Config, Defaults) {
  const auto w = default_config(ExperimentMode::Weights);
  EXPECT_EQ(w.kinds, (std::vector<CentralityKind>{CentralityKind::Degree, CentralityKind::Clustering}));
  EXPECT_EQ(w.query_sizes, (std::vector<std::size_t>{10, 20, 40, 80}));
  EXPECT_EQ(w.seeds.size(), 20U);
  EXPECT_EQ(w.world.sizes, std::vector<std::size_t>{1000});
  const auto id = default_config(ExperimentMode::Identify);
  EXPECT_EQ(id.kinds.size(), kBaseKinds.size());
  EXPECT_EQ(id.recipes.size(), kBaseKinds.size());
}

TEST(Config, ParsesScalarsAndLists) {
  const auto c = config_from_json(json::parse(R"({
    "mode": "identify",
    "world": {"n": 60, "m": 2},
    "kinds": ["degree", "pagerank"],
    "recipes": [{"kinds": ["pagerank"]}],
    "seeds": 4,
    "budget": {"pair_actions": 100},
    "threads": 2
  })"));
  EXPECT_EQ(c.mode, ExperimentMode::Identify);
  EXPECT_EQ(c.world.sizes, std::vector<std::size_t>{60});
  EXPECT_EQ(c.world.m, 2U);
  EXPECT_EQ(c.seeds, std::vector<std::uint64_t>{4});
  EXPECT_EQ(c.recipes.size(), 1U);
  EXPECT_EQ(c.limits.pair_actions, 100U);
  EXPECT_EQ(c.threads, 2U);
}

TEST(Config, Errors) {
  EXPECT_EQ(code_of([] { config_from_json(json{{"mode", "train"}}); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { config_from_json(json{{"kinds", {"katz", "degree"}}}); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { config_from_json(json{{"seeds", "many"}}); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { config_from_json(json{{"world", {{"type", "lattice"}}}}); }), Errc::BadParams);
  EXPECT_EQ(code_of([] { config_from_json(json{{"world", {{"type", "edgelist"}, {"path", "/nonexistent"}}}}); }),
            Errc::BadParams);
  EXPECT_EQ(code_of([] { config_from_json(json{{"kinds", {"degree"}}}); }), Errc::BadParams);
  EXPECT_EQ(code_of([] { config_from_json(json{{"query_sizes", {1}}}); }), Errc::BadParams);
  EXPECT_EQ(code_of([] { config_from_json(json{{"reference_kind", 2}}); }), Errc::BadParams);
  EXPECT_EQ(code_of([] { config_from_json(json{{"seeds", json::array()}}); }), Errc::BadParams);
  EXPECT_EQ(code_of([] { load_config("/nonexistent/config.json"); }), Errc::BadParams);
}

TEST(Worlds, BuildAndTarget) {
  WorldSpec spec;
  spec.sizes = {1000};
  const Graph g = build_world(spec, 1000, 3);
  EXPECT_EQ(g.edge_count(), 2U + 997U * 3U);
  EXPECT_EQ(pick_target(g, 5), pick_target(g, 5));
  EXPECT_LT(pick_target(g, 5).index(), 1000U);
  spec.type = "fixture";
  EXPECT_EQ(build_world(spec, 0, 0).node_count(), 2U);
  EXPECT_EQ(code_of([] { pick_target(Graph(), 0); }), Errc::BadParams);
}

TEST(Warmup, ReportPrintsPass) {
  const auto report = check_warmup(warmup_fixture());
  EXPECT_TRUE(report.pass());
  std::ostringstream out;
  print_warmup(out, report);
  EXPECT_NE(out.str().find("PASS"), std::string::npos);
  EXPECT_EQ(out.str().find("expected"), std::string::npos);
}

TEST(Summary, MeanAndSampleStdev) {
  const std::vector<WeightRow> rows{row(2, 10, 1.0), row(2, 10, 2.0), row(2, 10, 3.0), row(2, 10, 0.0, "DegenerateJ"),
                                    row(2, 20, 4.0), row(3, 10, 7.0, "OperationDominated")};
  const auto cells = summarize(rows);
  ASSERT_EQ(cells.size(), 3U);
  EXPECT_EQ(cells[0].runs, 3U);
  EXPECT_DOUBLE_EQ(cells[0].mean, 2.0);
  EXPECT_DOUBLE_EQ(cells[0].stdev, 1.0);
  EXPECT_EQ(cells[1].runs, 1U);
  EXPECT_EQ(cells[1].stdev, 0.0);
  EXPECT_EQ(cells[2].runs, 0U);
  EXPECT_TRUE(std::isnan(cells[2].mean));

  const std::vector<WeightRow> same{row(1, 10, 1.1), row(1, 10, 1.1), row(1, 10, 1.1)};
  EXPECT_EQ(summarize(same)[0].stdev, 0.0);
}

TEST(Scripts, ByName) {
  EXPECT_EQ(script_by_name("clustering", 10).name, "clustering");
  EXPECT_EQ(script_by_name("leaf", 10).name, "leaf");
  EXPECT_EQ(script_by_name("neighbors3", 10).cost_per_application, 3U);
  EXPECT_EQ(script_by_name("single", 10).cost_per_application, 0U);
  EXPECT_EQ(code_of([] { script_by_name("teleport", 10); }), Errc::ParseError);
}

TEST(Sweep, CsvIsByteIdenticalAcrossRunsAndThreadCounts) {
  auto config = small_weights();
  const auto first = run_weights(config);
  config.threads = 3;
  const auto second = run_weights(config);
  std::ostringstream a;
  std::ostringstream b;
  write_weights_csv(a, first, 2);
  write_weights_csv(b, second, 2);
  EXPECT_EQ(a.str(), b.str());
  std::ostringstream sa;
  std::ostringstream sb;
  write_summary_csv(sa, first);
  write_summary_csv(sb, second);
  EXPECT_EQ(sa.str(), sb.str());

  ASSERT_EQ(first.rows.size(), 12U);
  ASSERT_EQ(first.cells.size(), 4U);
  for (const auto& r : first.rows) {
    EXPECT_EQ(r.status, "ok");
    EXPECT_TRUE(r.within_bound);
  }
  EXPECT_EQ(a.str().substr(0, a.str().find('\n')),
            "seed,querySize,true_h0,true_h1,est_h0,est_h1,residual,pair_actions,rank_queries,"
            "preparation_pair_actions,operation_pair_actions,cost_bound,within_bound,status");
}

TEST(Identify, CampaignRecordsVerdictsAndBudgetFailures) {
  auto config = default_config(ExperimentMode::Identify);
  config.world.sizes = {40};
  config.seeds = {0};
  config.recipes = {HiddenRecipe::single(CentralityKind::Betweenness), HiddenRecipe::single(CentralityKind::Clustering)};
  const CertificateSet certs = obtain_certificates(config.kinds, "");
  const auto campaign = run_identify(config, certs);
  ASSERT_EQ(campaign.rows.size(), 2U);
  EXPECT_EQ(campaign.scored, 1U);
  EXPECT_EQ(campaign.correct, 1U);
  EXPECT_EQ(campaign.rows[0].verdict, "betweenness");
  EXPECT_EQ(campaign.rows[1].verdict, "Ambiguous");

  config.limits.pair_actions = 10;
  const auto capped = run_identify(config, certs);
  for (const auto& r : capped.rows) EXPECT_EQ(r.verdict, "BudgetExceeded");

  std::ostringstream csv;
  write_identify_csv(csv, campaign);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')),
            "world_size,seed,recipe,verdict,correct,profile_creations,pair_actions,rank_queries");
}
