#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "probe/centrality.hpp"
#include "probe/graph.hpp"
#include "probe/oracle.hpp"

namespace probe {

using KindPair = std::pair<CentralityKind, CentralityKind>;

struct WitnessPair {
  NodeId i;  // favoured by the first kind
  NodeId j;  // favoured by the second kind
};

/// A small graph in which kind `x` ranks i strictly above j and kind `y`
/// strictly below, with an anchor more than `level` hops from both witnesses.
struct DeltaCertificate {
  Graph graph;
  KindPair pair;
  NodeId i;
  NodeId j;
  NodeId anchor;
  unsigned level = 0;
};

/// First (i, j) in id order with a strict reversal between x and y, if any.
/// Requires a connected graph with at least two nodes.
std::optional<WitnessPair> is_delta_reversal(const Graph& g, CentralityKind x, CentralityKind y,
                                             double tie_tol = kDefaultTieTolerance);

/// True when the witnesses are strictly reversed on `g` for the certificate's pair.
bool reversal_holds(const Graph& g, const KindPair& pair, NodeId i, NodeId j,
                    double tie_tol = kDefaultTieTolerance);

/// Recomputes both centralities on the certificate graph and checks the anchor distances.
bool validate_certificate(const DeltaCertificate& cert, double tie_tol = kDefaultTieTolerance);

/// A surrogate host world. A candidate is attached as host.attach - hub - anchor.
struct AttachmentContext {
  Graph host;
  NodeId attach;
};

/// Surrogate worlds: Barabasi-Albert graphs with long sibling arms off the
/// attachment point, standing in for the rest of a combined query.
std::vector<AttachmentContext> default_contexts(std::uint64_t seed = 7);

/// Does the reversal survive attaching the certificate to `ctx`?
bool survives_in_context(const DeltaCertificate& cert, const AttachmentContext& ctx,
                         double tie_tol = kDefaultTieTolerance);

enum class SearchMode { Enumeration, SeededRandom };

struct SearchOptions {
  std::size_t max_nodes = 7;
  /// Sizes up to this bound are enumerated exhaustively; larger sizes are sampled.
  std::size_t exhaustive_limit = 8;
  SearchMode mode = SearchMode::Enumeration;
  std::size_t samples_per_size = 400;
  std::uint64_t seed = 1;
  unsigned min_level = 0;
  /// When non-empty, a certificate must also keep its reversal in each context.
  std::vector<AttachmentContext> contexts;
  double tie_tol = kDefaultTieTolerance;
};

/// Smallest-first search preferring maximal level. Throws NotFound.
DeltaCertificate find_delta_reversal(CentralityKind x, CentralityKind y, const SearchOptions& options = {});

using CertificateSet = std::map<KindPair, DeltaCertificate>;

/// One certificate per unordered pair of `kinds`, keyed in the order the kinds appear.
CertificateSet find_pairwise_certificates(std::span<const CentralityKind> kinds, const SearchOptions& options);

/// Options used to build certificates for identification against large worlds.
SearchOptions robust_search_options();

struct CombinedQuery {
  Graph graph;
  NodeId hub;
  std::map<KindPair, WitnessPair> witness_map;
  std::vector<NodeId> anchors;  // image of each certificate's anchor, in input order
  /// Set when some kind has no finite locality, so survival of the witnesses
  /// is not guaranteed and must be checked empirically.
  bool empirical = false;
};

/// Hub plus every certificate bridged through its anchor. Throws
/// LocalityViolation when a level does not exceed the largest finite locality.
CombinedQuery combine(std::span<const DeltaCertificate> certs);

struct IdentifyResult {
  CentralityKind kind;
  std::vector<std::vector<char>> matrix;  // matrix[a][b]: evidence for kinds[a] over kinds[b]
  Ranking observed;
  BudgetCounter budget;
};

/// Builds the combined query through the session, reads one ranking and
/// returns the kind whose row is all true. Throws Ambiguous otherwise.
IdentifyResult identify_centrality(OracleSession& session, std::span<const CentralityKind> kinds,
                                   const CertificateSet& certs);

/// Pure variant for inspection: which rows of the evidence matrix are all true.
std::vector<std::size_t> all_true_rows(const std::vector<std::vector<char>>& matrix);

/// The five-node query graph a1..a5 and a small world it is attached to.
struct WarmupFixture {
  Graph world;        // the hidden world
  NodeId attach;      // world node bridged to a1
  Graph query;        // a1..a5 as local ids 0..4
  Graph combined;     // world + query + bridge
  std::vector<NodeId> query_nodes;  // a1..a5 inside `combined`
};

WarmupFixture warmup_fixture();

/// Rebuilds a fixture from explicit parts (used for negative controls).
WarmupFixture make_warmup(const Graph& world, NodeId attach, const Graph& query);

/// The per-kind rankings of a1..a5 the warm-up is required to produce,
/// expressed over local ids 0..4.
std::map<CentralityKind, Ranking> expected_warmup_rankings();

/// Rankings of the query nodes under each base kind, over local ids 0..n-1.
std::map<CentralityKind, Ranking> warmup_rankings(const WarmupFixture& fixture,
                                                  double tie_tol = kDefaultTieTolerance);

/// Brute-force search for the smallest connected world (<= max_nodes nodes,
/// any attachment node) reproducing all expected warm-up rankings.
std::optional<WarmupFixture> search_warmup_world(std::size_t max_nodes = 5);

nlohmann::json certificate_to_json(const DeltaCertificate& cert);
DeltaCertificate certificate_from_json(const nlohmann::json& j);
nlohmann::json certificates_to_json(const CertificateSet& certs);
CertificateSet certificates_from_json(const nlohmann::json& j);

}  // namespace probe
