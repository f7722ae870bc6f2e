#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "probe/centrality.hpp"
#include "probe/error.hpp"
#include "probe/graph_enum.hpp"

using namespace probe;

namespace {

Graph lollipop() {
  // K4 on 0..3, tail 3-4-5-6
  Graph g = complete_graph(4);
  for (int i = 0; i < 3; ++i) g.add_node();
  g.add_edge(NodeId(3), NodeId(4));
  g.add_edge(NodeId(4), NodeId(5));
  g.add_edge(NodeId(5), NodeId(6));
  return g;
}

void expect_scores(const Scores& got, const std::vector<double>& want, double tol) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(got[i], want[i], tol) << "node " << i;
}

Ranking classes(std::initializer_list<std::initializer_list<std::uint32_t>> cs) {
  std::vector<std::vector<NodeId>> out;
  for (auto c : cs) {
    out.emplace_back();
    for (auto v : c) out.back().push_back(NodeId(v));
  }
  return Ranking(out);
}

}  // namespace

TEST(Centrality, SmallExamples) {
  expect_scores(compute(CentralityKind::Degree, star_graph(3)), {3, 1, 1, 1}, 0.0);
  expect_scores(compute(CentralityKind::Clustering, complete_graph(3)), {1, 1, 1}, 0.0);
  expect_scores(compute(CentralityKind::Betweenness, path_graph(3)), {0, 1, 0}, 1e-15);
  expect_scores(compute(CentralityKind::Pagerank, cycle_graph(4)), {0.25, 0.25, 0.25, 0.25}, 1e-12);
}

// Frozen from networkx 3.x.
TEST(Centrality, ReferenceValuesLollipop) {
  const Graph g = lollipop();
  expect_scores(compute(CentralityKind::Betweenness, g), {0, 0, 0, 0.6, 0.5333333333333333, 0.3333333333333333, 0},
                1e-12);
  expect_scores(compute(CentralityKind::Pagerank, g),
                {0.14789075529360676, 0.14789075529360676, 0.14789075529360676, 0.20074081191524795,
                 0.12612964349910352, 0.1459850577377171, 0.08347222096711106},
                1e-10);
  expect_scores(compute(CentralityKind::Clustering, g), {1, 1, 1, 0.5, 0, 0, 0}, 1e-15);
  expect_scores(compute(CentralityKind::Closeness, g),
                {0.5, 0.5, 0.5, 0.6666666666666666, 0.6, 0.46153846153846156, 0.3333333333333333}, 1e-12);
  expect_scores(compute(CentralityKind::Eccentricity, g), {-4, -4, -4, -3, -2, -3, -4}, 0.0);
}

TEST(Centrality, ReferenceValuesStarAndPath) {
  expect_scores(compute(CentralityKind::Pagerank, star_graph(3)),
                {0.4797297297297207, 0.17342342342342634, 0.17342342342342634, 0.17342342342342634}, 1e-10);
  expect_scores(compute(CentralityKind::Closeness, path_graph(5)),
                {0.4, 0.5714285714285714, 0.6666666666666666, 0.5714285714285714, 0.4}, 1e-12);
  expect_scores(compute(CentralityKind::Betweenness, path_graph(5)), {0, 0.5, 2.0 / 3.0, 0.5, 0}, 1e-12);
}

TEST(Centrality, BetweennessMatchesPathEnumerationOnAllSmallGraphs) {
  for (const Graph& g : connected_graphs_up_to(7, 3)) {
    const auto want = oracle::betweenness_by_paths(g);
    const auto got = compute(CentralityKind::Betweenness, g);
    for (std::size_t v = 0; v < want.size(); ++v) ASSERT_NEAR(got[v], want[v], 1e-12);
  }
  std::mt19937_64 rng(3);
  for (const Graph& g : connected_graphs(8)) {
    if (rng() % 20 != 0) continue;
    const auto want = oracle::betweenness_by_paths(g);
    const auto got = compute(CentralityKind::Betweenness, g);
    for (std::size_t v = 0; v < want.size(); ++v) ASSERT_NEAR(got[v], want[v], 1e-12);
  }
}

TEST(Centrality, PagerankMatchesLinearSolveAndSumsToOne) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 2 + rng() % 40;
    Graph g = oracle::random_connected(n, 0.1, rng);
    if (trial % 5 == 0) g.add_node();  // isolated node exercises dangling redistribution
    const auto got = compute(CentralityKind::Pagerank, g);
    const auto want = oracle::pagerank_by_solve(g);
    EXPECT_NEAR(std::accumulate(got.begin(), got.end(), 0.0), 1.0, 1e-10);
    for (std::size_t v = 0; v < got.size(); ++v) ASSERT_NEAR(got[v], want[v], 1e-10);
  }
}

TEST(Centrality, ClusteringAndDistancesMatchBruteForce) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 3 + rng() % 30;
    const Graph g = oracle::random_connected(n, 0.2, rng);
    const auto clu = compute(CentralityKind::Clustering, g);
    const auto want = oracle::clustering_by_triples(g);
    for (std::size_t v = 0; v < n; ++v) ASSERT_NEAR(clu[v], want[v], 1e-12);

    const auto fw = oracle::floyd_warshall(g);
    const auto ecc = compute(CentralityKind::Eccentricity, g);
    const auto clo = compute(CentralityKind::Closeness, g);
    for (std::size_t v = 0; v < n; ++v) {
      const int far = *std::max_element(fw[v].begin(), fw[v].end());
      const int total = std::accumulate(fw[v].begin(), fw[v].end(), 0);
      ASSERT_EQ(ecc[v], -far);
      ASSERT_NEAR(clo[v], static_cast<double>(n - 1) / total, 1e-12);
    }
  }
}

TEST(Centrality, ComputeVectorAndComputeForAgreeWithCompute) {
  const Graph g = barabasi_albert(60, 2, 4);
  const auto vec = compute_vector(kAllKinds, g);
  const std::vector<NodeId> some{NodeId(0), NodeId(17), NodeId(59)};
  for (std::size_t k = 0; k < kAllKinds.size(); ++k) {
    const auto full = compute(kAllKinds[k], g);
    const auto part = compute_for(kAllKinds[k], g, some);
    for (std::size_t v = 0; v < full.size(); ++v) ASSERT_EQ(vec.values[v][k], full[v]);
    for (NodeId v : some) ASSERT_EQ(part[v.index()], full[v.index()]);
  }
}

TEST(Centrality, DistanceKindsRejectDisconnectedGraphs) {
  Graph g(3);
  g.add_edge(NodeId(0), NodeId(1));
  for (auto kind : {CentralityKind::Eccentricity, CentralityKind::Closeness}) {
    try {
      compute(kind, g);
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::DisconnectedGraph);
    }
  }
  EXPECT_NO_THROW(compute(CentralityKind::Pagerank, g));
}

TEST(Centrality, Locality) {
  EXPECT_EQ(locality(CentralityKind::Degree), 1U);
  EXPECT_EQ(locality(CentralityKind::Clustering), 1U);
  for (auto kind : {CentralityKind::Eccentricity, CentralityKind::Betweenness, CentralityKind::Pagerank,
                    CentralityKind::Closeness}) {
    EXPECT_FALSE(locality(kind).has_value());
  }
}

// For any k, a path extended beyond v's k-ball changes Pagerank at v while the ball is unchanged.
TEST(Centrality, PagerankHasNoFiniteLocality) {
  for (std::uint32_t k = 1; k <= 6; ++k) {
    const Graph shorter = path_graph(k + 2);
    const Graph longer = path_graph(k + 3);
    const auto ball_a = k_hop_induced(shorter, NodeId(0), k);
    const auto ball_b = k_hop_induced(longer, NodeId(0), k);
    ASSERT_EQ(ball_a.graph, ball_b.graph);
    const double a = compute(CentralityKind::Pagerank, shorter)[0];
    const double b = compute(CentralityKind::Pagerank, longer)[0];
    EXPECT_TRUE(strictly_greater(std::max(a, b), std::min(a, b))) << "k=" << k;
  }
}

TEST(Centrality, OneLocalKindsDependOnlyOnTheBall) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = oracle::random_connected(30, 0.1, rng);
    const NodeId v(static_cast<std::uint32_t>(rng() % 30));
    const auto ball = k_hop_induced(g, v, 1);
    for (auto kind : {CentralityKind::Degree, CentralityKind::Clustering}) {
      ASSERT_EQ(compute(kind, g)[v.index()], compute(kind, ball.graph)[ball.center.index()]);
    }
  }
}

TEST(Ranking, FromScoresExamples) {
  const std::vector<double> a{3, 3, 1};
  EXPECT_EQ(rank_from_scores(a), classes({{0, 1}, {2}}));
  const std::vector<double> b{1.0, 1.0 + 1e-15};
  EXPECT_EQ(rank_from_scores(b, 1e-9), classes({{0, 1}}));
  const std::vector<double> c{2, 1, 0};
  EXPECT_EQ(rank_from_scores(c), classes({{0}, {1}, {2}}));
  EXPECT_THROW(rank_from_scores(c, -1.0), Error);
}

TEST(Ranking, ArgsortInvarianceUnderPositiveScaling) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> small(0, 6);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> s(20);
    for (auto& x : s) x = small(rng) * 0.25;
    std::vector<double> scaled(s);
    const double alpha = 0.1 + static_cast<double>(rng() % 1000) / 37.0;
    for (auto& x : scaled) x *= alpha;
    ASSERT_EQ(rank_from_scores(s), rank_from_scores(scaled));
  }
}

TEST(Ranking, RestrictExamples) {
  const Ranking r = classes({{0, 1}, {2}, {3}});
  const std::vector<NodeId> bd{NodeId(1), NodeId(3)};
  EXPECT_EQ(restrict(r, bd), classes({{1}, {3}}));
  const std::vector<NodeId> all{NodeId(0), NodeId(1), NodeId(2), NodeId(3)};
  EXPECT_EQ(restrict(r, all), r);
  const std::vector<NodeId> one{NodeId(2)};
  EXPECT_EQ(restrict(r, one).classes().size(), 1U);
  const std::vector<NodeId> missing{NodeId(9)};
  EXPECT_THROW(restrict(r, missing), Error);
}

TEST(Ranking, QueriesAndFormatting) {
  const Ranking r = classes({{4}, {1, 0}});
  EXPECT_TRUE(r.better(NodeId(4), NodeId(0)));
  EXPECT_TRUE(r.tied(NodeId(0), NodeId(1)));
  EXPECT_EQ(r.size(), 3U);
  EXPECT_EQ(format_ranking(r), "[4 > 0 = 1]");
  EXPECT_THROW(r.class_of(NodeId(2)), Error);
  EXPECT_EQ(parse_kind("pagerank"), CentralityKind::Pagerank);
  EXPECT_THROW(parse_kind("katz"), Error);
}
