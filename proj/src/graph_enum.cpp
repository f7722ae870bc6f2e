#include "probe/graph_enum.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <unordered_set>

#include "probe/error.hpp"

namespace probe {

namespace {

using Rows = std::array<std::uint16_t, kMaxCanonicalNodes>;

Rows rows_of(const Graph& g) {
  Rows rows{};
  for (const auto& [u, v] : g.edges()) {
    rows[u.index()] |= static_cast<std::uint16_t>(1U << v.value);
    rows[v.index()] |= static_cast<std::uint16_t>(1U << u.value);
  }
  return rows;
}

// Colour refinement: start from degrees, then split by the multiset of
// neighbour colours until stable. Colours are ranks of sorted signatures, so
// the result depends only on the isomorphism class.
std::vector<int> refine_colours(const Rows& rows, std::size_t n) {
  std::vector<int> colour(n);
  for (std::size_t v = 0; v < n; ++v) colour[v] = __builtin_popcount(rows[v]);
  for (std::size_t round = 0; round < n; ++round) {
    std::vector<std::vector<int>> sig(n);
    for (std::size_t v = 0; v < n; ++v) {
      sig[v].push_back(colour[v]);
      std::vector<int> nb;
      for (std::size_t w = 0; w < n; ++w) {
        if (rows[v] & (1U << w)) nb.push_back(colour[w]);
      }
      std::sort(nb.begin(), nb.end());
      sig[v].insert(sig[v].end(), nb.begin(), nb.end());
    }
    auto unique_sigs = sig;
    std::sort(unique_sigs.begin(), unique_sigs.end());
    unique_sigs.erase(std::unique(unique_sigs.begin(), unique_sigs.end()), unique_sigs.end());
    std::vector<int> next(n);
    for (std::size_t v = 0; v < n; ++v) {
      next[v] = static_cast<int>(std::lower_bound(unique_sigs.begin(), unique_sigs.end(), sig[v]) - unique_sigs.begin());
    }
    const auto classes = [](const std::vector<int>& c) {
      auto s = c;
      std::sort(s.begin(), s.end());
      return std::unique(s.begin(), s.end()) - s.begin();
    };
    const bool stable = classes(next) == classes(colour);
    colour = std::move(next);
    if (stable) break;
  }
  return colour;
}

std::uint64_t code_for(const Rows& rows, const std::vector<std::size_t>& perm) {
  const std::size_t n = perm.size();
  std::uint64_t code = 0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      code <<= 1;
      if (rows[perm[a]] & (1U << perm[b])) code |= 1U;
    }
  }
  return code;
}

}  // namespace

std::uint64_t canonical_code(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n > kMaxCanonicalNodes) throw Error(Errc::BadParams, "canonical_code supports at most 11 nodes");
  const Rows rows = rows_of(g);
  const auto colour = refine_colours(rows, n);

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](auto a, auto b) { return colour[a] < colour[b]; });

  // Cells of equal colour are permuted independently; iterate their product.
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && colour[perm[j]] == colour[perm[i]]) ++j;
    if (j - i > 1) cells.emplace_back(i, j);
    i = j;
  }
  std::uint64_t best = code_for(rows, perm);
  while (true) {
    std::size_t c = 0;
    for (; c < cells.size(); ++c) {
      const auto [lo, hi] = cells[c];
      if (std::next_permutation(perm.begin() + static_cast<long>(lo), perm.begin() + static_cast<long>(hi))) break;
    }
    if (c == cells.size()) break;
    best = std::min(best, code_for(rows, perm));
  }
  return best;
}

Graph graph_from_code(std::uint64_t code, std::size_t n) {
  Graph g(n);
  const std::size_t pairs = n * (n - 1) / 2;
  std::size_t bit = pairs;
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = a + 1; b < n; ++b) {
      --bit;
      if ((code >> bit) & 1U) g.add_edge(NodeId(a), NodeId(b));
    }
  }
  return g;
}

std::vector<Graph> connected_graphs(std::size_t n) {
  if (n == 0 || n > kMaxCanonicalNodes) throw Error(Errc::BadParams, "connected_graphs needs 1 <= n <= 11");
  std::vector<std::uint64_t> codes{0};  // the single vertex
  for (std::size_t size = 2; size <= n; ++size) {
    std::unordered_set<std::uint64_t> seen;
    for (auto code : codes) {
      const Graph base = graph_from_code(code, size - 1);
      // Every connected graph has a non-cut vertex, so extending each smaller
      // connected graph by one vertex with a non-empty neighbourhood reaches all.
      for (std::uint32_t mask = 1; mask < (1U << (size - 1)); ++mask) {
        Graph g = base;
        const NodeId v = g.add_node();
        for (std::uint32_t w = 0; w + 1 < size; ++w) {
          if (mask & (1U << w)) g.add_edge(v, NodeId(w));
        }
        seen.insert(canonical_code(g));
      }
    }
    codes.assign(seen.begin(), seen.end());
  }
  std::vector<Graph> out;
  out.reserve(codes.size());
  std::sort(codes.begin(), codes.end(), [](auto a, auto b) {
    const int ea = __builtin_popcountll(a);
    const int eb = __builtin_popcountll(b);
    return ea != eb ? ea < eb : a < b;
  });
  for (auto code : codes) out.push_back(graph_from_code(code, n));
  return out;
}

std::vector<Graph> connected_graphs_up_to(std::size_t max_n, std::size_t min_n) {
  std::vector<Graph> out;
  for (std::size_t n = std::max<std::size_t>(min_n, 1); n <= max_n; ++n) {
    auto layer = connected_graphs(n);
    std::move(layer.begin(), layer.end(), std::back_inserter(out));
  }
  return out;
}

Graph random_tree(std::size_t n, std::mt19937_64& rng) {
  Graph g(n);
  if (n < 2) return g;
  if (n == 2) {
    g.add_edge(NodeId(0), NodeId(1));
    return g;
  }
  // Pruefer decoding.
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(n - 1));
  std::vector<std::uint32_t> seq(n - 2);
  for (auto& s : seq) s = pick(rng);
  std::vector<std::size_t> degree(n, 1);
  for (auto s : seq) ++degree[s];
  for (auto s : seq) {
    for (std::uint32_t leaf = 0; leaf < n; ++leaf) {
      if (degree[leaf] == 1) {
        g.add_edge(NodeId(leaf), NodeId(s));
        --degree[leaf];
        --degree[s];
        break;
      }
    }
  }
  std::vector<std::uint32_t> rest;
  for (std::uint32_t v = 0; v < n; ++v) {
    if (degree[v] == 1) rest.push_back(v);
  }
  g.add_edge(NodeId(rest[0]), NodeId(rest[1]));
  return g;
}

Graph random_caterpillar(std::size_t n, std::mt19937_64& rng) {
  if (n < 2) return Graph(n);
  const std::size_t spine = std::uniform_int_distribution<std::size_t>(2, n)(rng);
  Graph g = path_graph(spine);
  // Leaves cluster on a few spine positions; the rest are sprinkled uniformly.
  const std::size_t heavy_count = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
  std::vector<std::uint32_t> heavy(heavy_count);
  std::uniform_int_distribution<std::uint32_t> on_spine(0, static_cast<std::uint32_t>(spine - 1));
  for (auto& h : heavy) h = on_spine(rng);
  std::bernoulli_distribution to_heavy(0.75);
  std::uniform_int_distribution<std::size_t> which(0, heavy_count - 1);
  for (std::size_t leaf = spine; leaf < n; ++leaf) {
    const std::uint32_t host = to_heavy(rng) ? heavy[which(rng)] : on_spine(rng);
    g.add_edge(g.add_node(), NodeId(host));
  }
  return g;
}

Graph random_lobster(std::size_t n, std::mt19937_64& rng) {
  if (n < 4) return random_caterpillar(n, rng);
  const std::size_t hairs = std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(1, n / 4))(rng);
  Graph g = random_caterpillar(n - hairs, rng);
  std::vector<NodeId> leaves;
  for (std::uint32_t v = 0; v < g.node_count(); ++v) {
    if (g.degree(NodeId(v)) == 1) leaves.emplace_back(v);
  }
  std::uniform_int_distribution<std::size_t> pick(0, leaves.size() - 1);
  for (std::size_t h = 0; h < hairs; ++h) g.add_edge(g.add_node(), leaves[pick(rng)]);
  return g;
}

Graph random_connected_gnp(std::size_t n, std::mt19937_64& rng) {
  Graph g = random_tree(n, rng);
  const double p = std::uniform_real_distribution<double>(0.0, 0.5)(rng);
  std::bernoulli_distribution coin(p);
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = u + 1; v < n; ++v) {
      if (coin(rng)) g.add_edge(NodeId(u), NodeId(v));
    }
  }
  return g;
}

}  // namespace probe
