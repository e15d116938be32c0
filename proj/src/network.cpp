#include "cournot/network.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "cournot/params.hpp"
#include "cournot/rng.hpp"

namespace cournot {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Relabels markets by first appearance when edges are scanned in canonical
// order. This makes the labeling a fixed point of save/load: reloading a
// saved file reproduces identical indices.
void canonicalize_market_labels(int n_markets, std::vector<Edge>& edges) {
  std::sort(edges.begin(), edges.end());
  std::vector<int> relabel(n_markets, -1);
  int next = 0;
  for (const Edge& e : edges) {
    if (relabel[e.market] < 0) relabel[e.market] = next++;
  }
  for (Edge& e : edges) e.market = relabel[e.market];
  std::sort(edges.begin(), edges.end());
}

}  // namespace

int MarketNetwork::edge_of(int firm, int market) const {
  Edge probe{firm, market};
  auto it = std::lower_bound(edges.begin(), edges.end(), probe);
  if (it == edges.end() || !(*it == probe)) return -1;
  return static_cast<int>(it - edges.begin());
}

MarketNetwork make_network(int n_firms, int n_markets, std::vector<Edge> edges,
                           std::vector<std::string> firm_ids,
                           std::vector<std::string> market_ids) {
  if (n_firms <= 0 || n_markets <= 0) {
    throw std::invalid_argument("network needs at least one firm and one market");
  }
  if (firm_ids.empty()) {
    for (int i = 0; i < n_firms; ++i) firm_ids.push_back("f" + std::to_string(i));
  }
  if (market_ids.empty()) {
    for (int j = 0; j < n_markets; ++j) market_ids.push_back("m" + std::to_string(j));
  }
  if (static_cast<int>(firm_ids.size()) != n_firms ||
      static_cast<int>(market_ids.size()) != n_markets) {
    throw std::invalid_argument("id list length does not match node count");
  }

  for (const Edge& e : edges) {
    if (e.firm < 0 || e.firm >= n_firms || e.market < 0 || e.market >= n_markets) {
      throw std::invalid_argument("edge (" + std::to_string(e.firm) + ", " +
                                  std::to_string(e.market) + ") out of range");
    }
  }
  std::sort(edges.begin(), edges.end());
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i] == edges[i - 1]) {
      throw std::invalid_argument("duplicate edge (" + firm_ids[edges[i].firm] +
                                  ", " + market_ids[edges[i].market] + ")");
    }
  }

  MarketNetwork net;
  net.n_firms = n_firms;
  net.n_markets = n_markets;
  net.edges = std::move(edges);
  net.firm_ids = std::move(firm_ids);
  net.market_ids = std::move(market_ids);
  net.firm_markets.resize(n_firms);
  net.market_firms.resize(n_markets);
  for (const Edge& e : net.edges) {
    net.firm_markets[e.firm].push_back(e.market);
    net.market_firms[e.market].push_back(e.firm);
  }
  for (int i = 0; i < n_firms; ++i) {
    if (net.firm_markets[i].empty()) {
      throw std::invalid_argument("isolated firm " + net.firm_ids[i] +
                                  ": every firm needs at least one market");
    }
  }
  for (int j = 0; j < n_markets; ++j) {
    if (net.market_firms[j].empty()) {
      throw std::invalid_argument("isolated market " + net.market_ids[j] +
                                  ": every market needs at least one firm");
    }
  }
  return net;
}

MarketNetwork load_network(const std::filesystem::path& edge_file,
                           std::optional<ExpectedCounts> expected) {
  std::ifstream in(edge_file);
  if (!in) {
    throw std::runtime_error("cannot open edge file " + edge_file.string());
  }
  std::string line;
  if (!std::getline(in, line) || trim(line) != "firm_id,market_id") {
    throw std::runtime_error(edge_file.string() +
                             ": expected header 'firm_id,market_id'");
  }

  std::unordered_map<std::string, int> firm_index, market_index;
  std::vector<std::string> firm_ids, market_ids;
  std::vector<Edge> edges;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    std::string row = trim(line);
    if (row.empty()) continue;
    auto comma = row.find(',');
    if (comma == std::string::npos || row.find(',', comma + 1) != std::string::npos) {
      throw std::runtime_error(edge_file.string() + ":" + std::to_string(lineno) +
                               ": expected exactly two comma-separated fields");
    }
    std::string fid = trim(row.substr(0, comma));
    std::string mid = trim(row.substr(comma + 1));
    if (fid.empty() || mid.empty()) {
      throw std::runtime_error(edge_file.string() + ":" + std::to_string(lineno) +
                               ": empty id");
    }
    auto [fit, fnew] = firm_index.try_emplace(fid, static_cast<int>(firm_ids.size()));
    if (fnew) firm_ids.push_back(fid);
    auto [mit, mnew] = market_index.try_emplace(mid, static_cast<int>(market_ids.size()));
    if (mnew) market_ids.push_back(mid);
    edges.push_back({fit->second, mit->second});
  }
  if (edges.empty()) {
    throw std::runtime_error(edge_file.string() + ": no edges");
  }

  {
    std::vector<Edge> sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      if (sorted[i] == sorted[i - 1]) {
        throw std::runtime_error(edge_file.string() + ": duplicate edge (" +
                                 firm_ids[sorted[i].firm] + ", " +
                                 market_ids[sorted[i].market] + ")");
      }
    }
  }

  const int n_firms = static_cast<int>(firm_ids.size());
  const int n_markets = static_cast<int>(market_ids.size());
  MarketNetwork net = make_network(n_firms, n_markets, std::move(edges),
                                   std::move(firm_ids), std::move(market_ids));
  if (expected) {
    if (net.n_firms != expected->firms || net.n_markets != expected->markets ||
        net.n_edges() != expected->edges) {
      throw std::runtime_error(
          edge_file.string() + ": counts (" + std::to_string(net.n_firms) + " firms, " +
          std::to_string(net.n_markets) + " markets, " + std::to_string(net.n_edges()) +
          " edges) do not match expected (" + std::to_string(expected->firms) + ", " +
          std::to_string(expected->markets) + ", " + std::to_string(expected->edges) + ")");
    }
  }
  return net;
}

void save_network(const MarketNetwork& net, const std::filesystem::path& edge_file) {
  std::ofstream out(edge_file);
  if (!out) {
    throw std::runtime_error("cannot write edge file " + edge_file.string());
  }
  out << "firm_id,market_id\n";
  for (const Edge& e : net.edges) {
    out << net.firm_ids[e.firm] << ',' << net.market_ids[e.market] << '\n';
  }
  if (!out) {
    throw std::runtime_error("write failed for " + edge_file.string());
  }
}

MarketNetwork generate_synthetic(int n_firms, int n_markets, int n_edges,
                                 std::uint64_t seed) {
  if (n_firms <= 0 || n_markets <= 0) {
    throw std::invalid_argument("node counts must be positive");
  }
  const std::int64_t cells = static_cast<std::int64_t>(n_firms) * n_markets;
  if (n_edges < std::max(n_firms, n_markets) || n_edges > cells) {
    throw std::invalid_argument(
        "infeasible edge count " + std::to_string(n_edges) + " for " +
        std::to_string(n_firms) + "x" + std::to_string(n_markets) +
        " (need max(n,m) <= edges <= n*m)");
  }

  rng::Engine gen(seed);
  // The coverage phase can overshoot the edge budget on tight counts;
  // redraw (deterministically, continuing the stream) until it fits.
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<char> present(static_cast<std::size_t>(cells), 0);
    std::vector<Edge> edges;
    auto add = [&](int f, int m) {
      present[static_cast<std::size_t>(f) * n_markets + m] = 1;
      edges.push_back({f, m});
    };
    for (int f = 0; f < n_firms; ++f) {
      add(f, static_cast<int>(rng::uniform_below(gen, n_markets)));
    }
    std::vector<char> covered(n_markets, 0);
    for (const Edge& e : edges) covered[e.market] = 1;
    for (int m = 0; m < n_markets; ++m) {
      if (!covered[m]) add(static_cast<int>(rng::uniform_below(gen, n_firms)), m);
    }
    if (static_cast<int>(edges.size()) > n_edges) continue;

    std::vector<std::int64_t> absent;
    absent.reserve(static_cast<std::size_t>(cells) - edges.size());
    for (std::int64_t cell = 0; cell < cells; ++cell) {
      if (!present[static_cast<std::size_t>(cell)]) absent.push_back(cell);
    }
    std::size_t need = static_cast<std::size_t>(n_edges) - edges.size();
    for (std::size_t i = 0; i < need; ++i) {
      std::size_t j = i + static_cast<std::size_t>(
                              rng::uniform_below(gen, absent.size() - i));
      std::swap(absent[i], absent[j]);
      edges.push_back({static_cast<int>(absent[i] / n_markets),
                       static_cast<int>(absent[i] % n_markets)});
    }

    canonicalize_market_labels(n_markets, edges);
    return make_network(n_firms, n_markets, std::move(edges));
  }
  throw std::runtime_error("could not cover all nodes within the edge budget (" +
                           std::to_string(n_firms) + "x" + std::to_string(n_markets) +
                           ", " + std::to_string(n_edges) + " edges)");
}

NetworkStats stats(const MarketNetwork& net) {
  NetworkStats s;
  s.n_firms = net.n_firms;
  s.n_markets = net.n_markets;
  s.n_edges = net.n_edges();
  for (const auto& markets : net.firm_markets) {
    s.firm_degree_histogram[static_cast<int>(markets.size())]++;
  }
  for (const auto& firms : net.market_firms) {
    s.market_degree_histogram[static_cast<int>(firms.size())]++;
  }
  return s;
}

bool GameParams::uniform_alpha() const {
  for (double a : alpha) {
    if (a != alpha.front()) return false;
  }
  return !alpha.empty();
}

double GameParams::alpha_scalar() const {
  if (!uniform_alpha()) {
    throw std::invalid_argument("alpha varies across markets; a single scalar is required here");
  }
  return alpha.front();
}

double GameParams::min_alpha() const {
  return *std::min_element(alpha.begin(), alpha.end());
}

double GameParams::max_alpha() const {
  return *std::max_element(alpha.begin(), alpha.end());
}

void GameParams::validate(const MarketNetwork& net) const {
  if (static_cast<int>(alpha.size()) != net.n_markets) {
    throw std::invalid_argument("alpha has " + std::to_string(alpha.size()) +
                                " entries for " + std::to_string(net.n_markets) +
                                " markets");
  }
  for (double a : alpha) {
    if (!(a > 0.0)) throw std::invalid_argument("alpha entries must be positive");
  }
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
  if (!(cost > 0.0)) throw std::invalid_argument("cost must be positive");
  if (!(q_t >= 0.0)) throw std::invalid_argument("q_t must be nonnegative");
  if (!(budget >= 0.0)) throw std::invalid_argument("budget must be nonnegative");
}

GameParams GameParams::uniform(int n_markets, double alpha, double beta, double cost) {
  GameParams p;
  p.alpha.assign(static_cast<std::size_t>(n_markets), alpha);
  p.beta = beta;
  p.cost = cost;
  return p;
}

}  // namespace cournot
