#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "probe/graph_enum.hpp"

using namespace probe;

namespace {

Graph relabel(const Graph& g, const std::vector<std::uint32_t>& perm) {
  Graph out(g.node_count());
  for (const auto& [u, v] : g.edges()) out.add_edge(NodeId(perm[u.index()]), NodeId(perm[v.index()]));
  return out;
}

}  // namespace

TEST(GraphEnum, ConnectedCountsMatchOeisA001349) {
  const std::vector<std::size_t> expected{1, 1, 2, 6, 21, 112, 853, 11117};
  for (std::size_t n = 1; n <= expected.size(); ++n) {
    const auto graphs = connected_graphs(n);
    EXPECT_EQ(graphs.size(), expected[n - 1]) << "n=" << n;
    std::set<std::uint64_t> codes;
    for (const auto& g : graphs) {
      ASSERT_TRUE(is_connected(g));
      codes.insert(canonical_code(g));
    }
    EXPECT_EQ(codes.size(), graphs.size());
  }
}

TEST(GraphEnum, CanonicalCodeIsRelabelInvariant) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 9;
    const Graph g = random_connected_gnp(n, rng);
    std::vector<std::uint32_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0U);
    std::shuffle(perm.begin(), perm.end(), rng);
    ASSERT_EQ(canonical_code(g), canonical_code(relabel(g, perm)));
  }
}

TEST(GraphEnum, CanonicalCodeSeparatesNonIsomorphicGraphs) {
  EXPECT_NE(canonical_code(path_graph(4)), canonical_code(star_graph(3)));
  EXPECT_NE(canonical_code(cycle_graph(6)), canonical_code([] {
              Graph two = cycle_graph(3);
              attach_disjoint(two, cycle_graph(3), NodeId(0), NodeId(0));
              return two;
            }()));
}

TEST(GraphEnum, CodeRoundTrip) {
  for (const auto& g : connected_graphs(6)) {
    const Graph back = graph_from_code(canonical_code(g), 6);
    EXPECT_EQ(canonical_code(back), canonical_code(g));
    EXPECT_EQ(back.edge_count(), g.edge_count());
  }
}

TEST(GraphEnum, RandomFamiliesAreConnectedAndSized) {
  std::mt19937_64 rng(17);
  for (std::size_t n = 1; n <= 30; ++n) {
    for (auto* gen : {&random_tree, &random_caterpillar, &random_lobster, &random_connected_gnp}) {
      const Graph g = gen(n, rng);
      ASSERT_EQ(g.node_count(), n);
      ASSERT_TRUE(is_connected(g));
    }
    ASSERT_EQ(random_tree(n, rng).edge_count(), n - 1);
  }
}
