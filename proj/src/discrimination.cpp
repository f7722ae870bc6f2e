#include "probe/discrimination.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <set>

#include "probe/error.hpp"
#include "probe/graph_enum.hpp"

namespace probe {

namespace {

std::vector<NodeId> all_nodes(const Graph& g) {
  std::vector<NodeId> out(g.node_count());
  for (std::size_t v = 0; v < out.size(); ++v) out[v] = NodeId(static_cast<std::uint32_t>(v));
  return out;
}

std::vector<std::vector<std::uint32_t>> all_distances(const Graph& g) {
  std::vector<std::vector<std::uint32_t>> d;
  d.reserve(g.node_count());
  for (NodeId v : all_nodes(g)) d.push_back(bfs_distances(g, v));
  return d;
}

bool reversed(const Scores& sx, const Scores& sy, NodeId i, NodeId j, double tie_tol) {
  return strictly_greater(sx[i.index()], sx[j.index()], tie_tol) &&
         strictly_greater(sy[j.index()], sy[i.index()], tie_tol);
}

struct Candidate {
  std::size_t graph = 0;
  NodeId i;
  NodeId j;
  NodeId anchor;
  unsigned level = 0;
};

// All (i, j, anchor) triples of one graph, best level first.
std::vector<Candidate> candidates_in(const Graph& g, std::size_t graph_index, const KindPair& pair,
                                     unsigned min_level, double tie_tol) {
  std::vector<Candidate> out;
  const Scores sx = compute(pair.first, g);
  const Scores sy = compute(pair.second, g);
  std::vector<std::vector<std::uint32_t>> dist;
  for (NodeId i : all_nodes(g)) {
    for (NodeId j : all_nodes(g)) {
      if (i == j || !reversed(sx, sy, i, j, tie_tol)) continue;
      if (dist.empty()) dist = all_distances(g);
      for (NodeId k : all_nodes(g)) {
        if (k == i || k == j) continue;
        const unsigned level = std::min(dist[i.index()][k.index()], dist[j.index()][k.index()]) - 1;
        if (level >= min_level) out.push_back({graph_index, i, j, k, level});
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) { return a.level > b.level; });
  return out;
}

const std::vector<Graph>& enumerated(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::vector<Graph>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, connected_graphs(n)).first;
  return it->second;
}

// Per-context scores of one certificate graph attached by one anchor; cached
// because every (i, j) sharing that anchor reuses them.
class ContextEvaluator {
 public:
  ContextEvaluator(const std::vector<AttachmentContext>& contexts, const KindPair& pair, double tie_tol)
      : contexts_(contexts), pair_(pair), tie_tol_(tie_tol) {}

  bool survives(const Graph& g, std::size_t graph_key, NodeId i, NodeId j, NodeId anchor) {
    for (std::size_t c = 0; c < contexts_.size(); ++c) {
      const auto& s = scores(g, graph_key, anchor, c);
      if (!reversed(s.first, s.second, i, j, tie_tol_)) return false;
    }
    return true;
  }

 private:
  using Pair = std::pair<Scores, Scores>;

  const Pair& scores(const Graph& g, std::size_t graph_key, NodeId anchor, std::size_t c) {
    const auto key = std::make_tuple(graph_key, anchor.value, c);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    Graph world = contexts_[c].host;
    const auto map = attach_disjoint(world, g, contexts_[c].attach, anchor);
    const Scores sx = compute_for(pair_.first, world, map);
    const Scores sy = compute_for(pair_.second, world, map);
    Pair local{Scores(g.node_count()), Scores(g.node_count())};
    for (std::size_t v = 0; v < map.size(); ++v) {
      local.first[v] = sx[map[v].index()];
      local.second[v] = sy[map[v].index()];
    }
    return cache_.emplace(key, std::move(local)).first->second;
  }

  const std::vector<AttachmentContext>& contexts_;
  KindPair pair_;
  double tie_tol_;
  std::map<std::tuple<std::size_t, std::uint32_t, std::size_t>, Pair> cache_;
};

DeltaCertificate make_certificate(const Graph& g, const KindPair& pair, const Candidate& c) {
  return DeltaCertificate{g, pair, c.i, c.j, c.anchor, c.level};
}

Graph sample_graph(std::size_t n, std::size_t draw, std::mt19937_64& rng) {
  switch (draw % 4) {
    case 0: return random_connected_gnp(n, rng);
    case 1: return random_tree(n, rng);
    case 2: return random_caterpillar(n, rng);
    default: return random_lobster(n, rng);
  }
}

}  // namespace

bool reversal_holds(const Graph& g, const KindPair& pair, NodeId i, NodeId j, double tie_tol) {
  const NodeId nodes[] = {i, j};
  const Scores sx = compute_for(pair.first, g, nodes);
  const Scores sy = compute_for(pair.second, g, nodes);
  return reversed(sx, sy, i, j, tie_tol);
}

std::optional<WitnessPair> is_delta_reversal(const Graph& g, CentralityKind x, CentralityKind y, double tie_tol) {
  if (g.node_count() < 2 || !is_connected(g)) {
    throw Error(Errc::BadParams, "delta-reversal test needs a connected graph with at least two nodes");
  }
  if (x == y) return std::nullopt;
  const Scores sx = compute(x, g);
  const Scores sy = compute(y, g);
  for (NodeId i : all_nodes(g)) {
    for (NodeId j : all_nodes(g)) {
      if (i != j && reversed(sx, sy, i, j, tie_tol)) return WitnessPair{i, j};
    }
  }
  return std::nullopt;
}

bool validate_certificate(const DeltaCertificate& cert, double tie_tol) {
  const auto& g = cert.graph;
  if (!g.has_node(cert.i) || !g.has_node(cert.j) || !g.has_node(cert.anchor)) return false;
  if (!is_connected(g) || cert.anchor == cert.i || cert.anchor == cert.j) return false;
  const auto di = hop_distance(g, cert.i, cert.anchor);
  const auto dj = hop_distance(g, cert.j, cert.anchor);
  if (!di || !dj || *di <= cert.level || *dj <= cert.level) return false;
  return reversal_holds(g, cert.pair, cert.i, cert.j, tie_tol);
}

std::vector<AttachmentContext> default_contexts(std::uint64_t seed) {
  std::vector<AttachmentContext> out;
  std::mt19937_64 rng(seed);
  const auto with_hub = [&](Graph world, std::size_t arm_path, std::size_t tree_arms) {
    const NodeId target(static_cast<std::uint32_t>(
        std::uniform_int_distribution<std::size_t>(0, world.node_count() - 1)(rng)));
    const NodeId hub = world.add_node();
    world.add_edge(hub, target);
    if (arm_path > 0) attach_disjoint(world, path_graph(arm_path), hub, NodeId(0));
    for (std::size_t t = 0; t < tree_arms; ++t) {
      const std::size_t size = std::uniform_int_distribution<std::size_t>(5, 8)(rng);
      attach_disjoint(world, random_tree(size, rng), hub, NodeId(0));
    }
    out.push_back({std::move(world), hub});
  };
  with_hub(barabasi_albert(300, 2, rng()), 9, 6);
  with_hub(barabasi_albert(60, 2, rng()), 9, 2);
  with_hub(barabasi_albert(150, 3, rng()), 0, 0);
  return out;
}

bool survives_in_context(const DeltaCertificate& cert, const AttachmentContext& ctx, double tie_tol) {
  Graph world = ctx.host;
  const auto map = attach_disjoint(world, cert.graph, ctx.attach, cert.anchor);
  return reversal_holds(world, cert.pair, map[cert.i.index()], map[cert.j.index()], tie_tol);
}

DeltaCertificate find_delta_reversal(CentralityKind x, CentralityKind y, const SearchOptions& options) {
  if (x == y) throw Error(Errc::BadParams, "a centrality cannot be reversed against itself");
  if (options.max_nodes < 3) throw Error(Errc::BadParams, "max_nodes must be at least 3");
  const KindPair pair{x, y};
  ContextEvaluator contexts(options.contexts, pair, options.tie_tol);

  std::size_t first_sampled = 3;
  if (options.mode == SearchMode::Enumeration) {
    const std::size_t limit = std::min({options.max_nodes, options.exhaustive_limit, kMaxCanonicalNodes});
    std::vector<const Graph*> graphs;
    for (std::size_t n = 3; n <= limit; ++n) {
      for (const auto& g : enumerated(n)) graphs.push_back(&g);
    }
    std::vector<Candidate> all;
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
      auto c = candidates_in(*graphs[gi], gi, pair, options.min_level, options.tie_tol);
      all.insert(all.end(), c.begin(), c.end());
    }
    // Graphs are already ordered by size, so a stable sort on level keeps
    // smaller graphs first within a level.
    std::stable_sort(all.begin(), all.end(), [](const Candidate& a, const Candidate& b) { return a.level > b.level; });
    for (const auto& c : all) {
      const Graph& g = *graphs[c.graph];
      if (contexts.survives(g, c.graph, c.i, c.j, c.anchor)) return make_certificate(g, pair, c);
    }
    first_sampled = limit + 1;
  }

  std::mt19937_64 rng(options.seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(x) * 31 +
                      static_cast<std::uint64_t>(y));
  std::size_t key = 1U << 30;  // context cache keys for sampled graphs
  for (std::size_t n = first_sampled; n <= options.max_nodes; ++n) {
    std::optional<DeltaCertificate> best;
    for (std::size_t draw = 0; draw < options.samples_per_size; ++draw) {
      const Graph g = sample_graph(n, draw, rng);
      ++key;
      for (const auto& c : candidates_in(g, key, pair, options.min_level, options.tie_tol)) {
        if (best && c.level <= best->level) break;
        if (contexts.survives(g, key, c.i, c.j, c.anchor)) {
          best = make_certificate(g, pair, c);
          break;
        }
      }
    }
    if (best) return *best;
  }
  throw Error(Errc::NotFound, "no " + std::string(to_string(x)) + "/" + std::string(to_string(y)) +
                                  " reversal within " + std::to_string(options.max_nodes) + " nodes");
}

CertificateSet find_pairwise_certificates(std::span<const CentralityKind> kinds, const SearchOptions& options) {
  CertificateSet out;
  for (std::size_t a = 0; a < kinds.size(); ++a) {
    for (std::size_t b = a + 1; b < kinds.size(); ++b) {
      out.emplace(KindPair{kinds[a], kinds[b]}, find_delta_reversal(kinds[a], kinds[b], options));
    }
  }
  return out;
}

SearchOptions robust_search_options() {
  SearchOptions options;
  options.max_nodes = 40;
  options.exhaustive_limit = 8;
  options.samples_per_size = 200;
  options.min_level = 2;
  options.contexts = default_contexts();
  return options;
}

CombinedQuery combine(std::span<const DeltaCertificate> certs) {
  if (certs.empty()) throw Error(Errc::BadParams, "combine needs at least one certificate");
  std::set<CentralityKind> kinds;
  for (const auto& c : certs) {
    kinds.insert(c.pair.first);
    kinds.insert(c.pair.second);
  }
  std::optional<unsigned> max_local;
  bool unbounded = false;
  for (auto k : kinds) {
    if (const auto loc = locality(k)) {
      max_local = std::max(max_local.value_or(0U), *loc);
    } else {
      unbounded = true;
    }
  }
  if (max_local) {
    for (const auto& c : certs) {
      if (c.level <= *max_local) {
        throw Error(Errc::LocalityViolation,
                    std::string(to_string(c.pair.first)) + "/" + std::string(to_string(c.pair.second)) +
                        " certificate has level " + std::to_string(c.level) + ", needs > " + std::to_string(*max_local));
      }
    }
  }

  CombinedQuery q;
  q.hub = q.graph.add_node();
  q.empirical = unbounded;
  for (const auto& c : certs) {
    const auto map = attach_disjoint(q.graph, c.graph, q.hub, c.anchor);
    q.witness_map[c.pair] = WitnessPair{map[c.i.index()], map[c.j.index()]};
    q.anchors.push_back(map[c.anchor.index()]);
  }
  // Distinguishing d candidates needs at least d distinct orderings of the query nodes.
  double orderings = 1.0;
  for (std::size_t k = 2; k <= q.graph.node_count() && orderings < static_cast<double>(kinds.size()); ++k) {
    orderings *= static_cast<double>(k);
  }
  if (orderings < static_cast<double>(kinds.size())) {
    throw Error(Errc::BadParams, "query graph too small to separate the candidate set");
  }
  return q;
}

std::vector<std::size_t> all_true_rows(const std::vector<std::vector<char>>& matrix) {
  std::vector<std::size_t> rows;
  for (std::size_t a = 0; a < matrix.size(); ++a) {
    bool all = true;
    for (std::size_t b = 0; b < matrix[a].size(); ++b) {
      if (a != b && !matrix[a][b]) all = false;
    }
    if (all) rows.push_back(a);
  }
  return rows;
}

IdentifyResult identify_centrality(OracleSession& session, std::span<const CentralityKind> kinds,
                                   const CertificateSet& certs) {
  if (kinds.empty()) throw Error(Errc::BadParams, "empty candidate set");
  const std::size_t d = kinds.size();
  IdentifyResult result{kinds.front(), std::vector<std::vector<char>>(d, std::vector<char>(d, 0)), {}, {}};
  if (d == 1) {
    result.budget = session.budget_report();
    return result;
  }

  // Orient every certificate so that kinds[a] favours i for a < b.
  std::vector<DeltaCertificate> chosen;
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a + 1; b < d; ++b) {
      if (auto it = certs.find({kinds[a], kinds[b]}); it != certs.end()) {
        chosen.push_back(it->second);
      } else if (auto rev = certs.find({kinds[b], kinds[a]}); rev != certs.end()) {
        DeltaCertificate flipped = rev->second;
        flipped.pair = {kinds[a], kinds[b]};
        std::swap(flipped.i, flipped.j);
        chosen.push_back(std::move(flipped));
      } else {
        throw Error(Errc::NotFound, "no certificate for " + std::string(to_string(kinds[a])) + "/" +
                                        std::string(to_string(kinds[b])));
      }
      slots.emplace_back(a, b);
    }
  }
  const CombinedQuery query = combine(chosen);

  std::vector<NodeId> profile(query.graph.node_count());
  for (auto& p : profile) p = session.create_profile();
  for (const auto& [u, v] : query.graph.edges()) session.pair_action(profile[u.index()], profile[v.index()]);
  session.pair_action(profile[query.hub.index()], session.target());
  result.observed = session.observed_ranking();

  for (std::size_t s = 0; s < slots.size(); ++s) {
    const auto [a, b] = slots[s];
    const auto w = query.witness_map.at(chosen[s].pair);
    const NodeId i = profile[w.i.index()];
    const NodeId j = profile[w.j.index()];
    result.matrix[a][b] = result.observed.better(i, j);
    result.matrix[b][a] = result.observed.better(j, i);
  }
  result.budget = session.budget_report();
  const auto rows = all_true_rows(result.matrix);
  if (rows.size() != 1) {
    throw Error(Errc::Ambiguous, std::to_string(rows.size()) + " candidate rows are all true");
  }
  result.kind = kinds[rows.front()];
  return result;
}

WarmupFixture make_warmup(const Graph& world, NodeId attach, const Graph& query) {
  WarmupFixture f{world, attach, query, world, {}};
  f.query_nodes = attach_disjoint(f.combined, query, attach, NodeId(0));
  return f;
}

WarmupFixture warmup_fixture() {
  // a1..a5 -> 0..4: a1 carries the bridge, a2 is a1's child with two leaves.
  Graph query(5);
  query.add_edge(NodeId(0), NodeId(1));
  query.add_edge(NodeId(0), NodeId(2));
  query.add_edge(NodeId(1), NodeId(3));
  query.add_edge(NodeId(1), NodeId(4));
  return make_warmup(path_graph(2), NodeId(0), query);
}

std::map<CentralityKind, Ranking> expected_warmup_rankings() {
  const auto cls = [](std::initializer_list<std::initializer_list<std::uint32_t>> groups) {
    std::vector<std::vector<NodeId>> out;
    for (const auto& g : groups) {
      out.emplace_back();
      for (auto v : g) out.back().emplace_back(v);
    }
    return Ranking(std::move(out));
  };
  return {
      {CentralityKind::Degree, cls({{0, 1}, {2, 3, 4}})},
      {CentralityKind::Eccentricity, cls({{0}, {1, 2}, {3, 4}})},
      {CentralityKind::Betweenness, cls({{0}, {1}, {2, 3, 4}})},
      {CentralityKind::Pagerank, cls({{1}, {0}, {3, 4}, {2}})},
      {CentralityKind::Closeness, cls({{0}, {1}, {2}, {3, 4}})},
  };
}

std::map<CentralityKind, Ranking> warmup_rankings(const WarmupFixture& fixture, double tie_tol) {
  std::map<CentralityKind, Ranking> out;
  for (auto kind : kBaseKinds) {
    const Scores s = compute(kind, fixture.combined);
    Scores local(fixture.query_nodes.size());
    for (std::size_t v = 0; v < local.size(); ++v) local[v] = s[fixture.query_nodes[v].index()];
    out.emplace(kind, rank_from_scores(local, tie_tol));
  }
  return out;
}

std::optional<WarmupFixture> search_warmup_world(std::size_t max_nodes) {
  const auto expected = expected_warmup_rankings();
  const Graph query = warmup_fixture().query;
  for (const auto& world : connected_graphs_up_to(max_nodes, 1)) {
    for (NodeId attach : all_nodes(world)) {
      auto f = make_warmup(world, attach, query);
      if (warmup_rankings(f) == expected) return f;
    }
  }
  return std::nullopt;
}

nlohmann::json certificate_to_json(const DeltaCertificate& cert) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [u, v] : cert.graph.edges()) edges.push_back({u.value, v.value});
  return {{"pair", {std::string(to_string(cert.pair.first)), std::string(to_string(cert.pair.second))}},
          {"nodes", cert.graph.node_count()},
          {"edges", edges},
          {"i", cert.i.value},
          {"j", cert.j.value},
          {"anchor", cert.anchor.value},
          {"level", cert.level}};
}

DeltaCertificate certificate_from_json(const nlohmann::json& j) {
  try {
    DeltaCertificate c;
    c.pair = {parse_kind(j.at("pair").at(0).get<std::string>()), parse_kind(j.at("pair").at(1).get<std::string>())};
    c.graph = Graph(j.at("nodes").get<std::size_t>());
    for (const auto& e : j.at("edges")) c.graph.add_edge(NodeId(e.at(0).get<std::uint32_t>()), NodeId(e.at(1).get<std::uint32_t>()));
    c.i = NodeId(j.at("i").get<std::uint32_t>());
    c.j = NodeId(j.at("j").get<std::uint32_t>());
    c.anchor = NodeId(j.at("anchor").get<std::uint32_t>());
    c.level = j.at("level").get<unsigned>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("certificate: ") + e.what());
  }
}

nlohmann::json certificates_to_json(const CertificateSet& certs) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [pair, cert] : certs) out.push_back(certificate_to_json(cert));
  return out;
}

CertificateSet certificates_from_json(const nlohmann::json& j) {
  CertificateSet out;
  for (const auto& item : j) {
    auto c = certificate_from_json(item);
    out.emplace(c.pair, std::move(c));
  }
  return out;
}

}  // namespace probe
