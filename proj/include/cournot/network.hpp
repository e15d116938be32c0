#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cournot {

/// One supply relation: firm `firm` can sell in market `market`.
struct Edge {
  int firm = 0;
  int market = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Bipartite firm-market graph.
///
/// Edges are stored sorted by (firm, market); every per-edge vector in the
/// toolkit (quantities, matrix rows/columns) uses that order. Instances are
/// immutable after construction and safe to share across threads.
struct MarketNetwork {
  int n_firms = 0;
  int n_markets = 0;
  std::vector<Edge> edges;                     // canonical (firm, market) order
  std::vector<std::vector<int>> firm_markets;  // markets firm i sells in
  std::vector<std::vector<int>> market_firms;  // firms competing in market j
  std::vector<std::string> firm_ids;
  std::vector<std::string> market_ids;

  int n_edges() const { return static_cast<int>(edges.size()); }

  /// Index of edge (firm, market) in canonical order, or -1 if absent.
  int edge_of(int firm, int market) const;

  bool operator==(const MarketNetwork&) const = default;
};

struct ExpectedCounts {
  int firms = 0;
  int markets = 0;
  int edges = 0;
};

struct NetworkStats {
  int n_firms = 0;
  int n_markets = 0;
  int n_edges = 0;
  std::map<int, int> firm_degree_histogram;    // degree -> number of firms
  std::map<int, int> market_degree_histogram;  // degree -> number of markets
};

/// Builds a network from raw edges, validating all structural invariants:
/// indices in range, no duplicate pairs, no isolated firm or market.
/// Ids default to "f<i>" / "m<j>" when not supplied.
MarketNetwork make_network(int n_firms, int n_markets, std::vector<Edge> edges,
                           std::vector<std::string> firm_ids = {},
                           std::vector<std::string> market_ids = {});

/// Reads the edge-list format: UTF-8 CSV with header `firm_id,market_id`,
/// one edge per line. External ids map to dense indices in first-appearance
/// order. If `expected` is given, the resulting counts must match exactly.
MarketNetwork load_network(const std::filesystem::path& edge_file,
                           std::optional<ExpectedCounts> expected = std::nullopt);

/// Writes the edge-list format in canonical edge order.
void save_network(const MarketNetwork& net, const std::filesystem::path& edge_file);

/// Deterministic random bipartite instance with the exact requested counts
/// and minimum degree one on both sides: first one uniformly random market
/// per firm and one firm per still-uncovered market, then the remaining
/// edges uniformly without replacement.
MarketNetwork generate_synthetic(int n_firms, int n_markets, int n_edges,
                                 std::uint64_t seed);

NetworkStats stats(const MarketNetwork& net);

}  // namespace cournot
