#include "cournot/centrality.hpp"

#include <queue>
#include <vector>

namespace cournot {

namespace {

// Nodes 0..n_firms-1 are firms, n_firms..n_firms+n_markets-1 are markets.
std::vector<std::vector<int>> node_adjacency(const MarketNetwork& net) {
  std::vector<std::vector<int>> adj(net.n_firms + net.n_markets);
  for (const Edge& e : net.edges) {
    adj[e.firm].push_back(net.n_firms + e.market);
    adj[net.n_firms + e.market].push_back(e.firm);
  }
  return adj;
}

}  // namespace

std::string to_string(CentralityMeasure measure) {
  switch (measure) {
    case CentralityMeasure::degree: return "degree";
    case CentralityMeasure::betweenness: return "betweenness";
    case CentralityMeasure::closeness: return "closeness";
  }
  return "unknown";
}

CentralityScores degree(const MarketNetwork& net) {
  CentralityScores scores;
  scores.measure = CentralityMeasure::degree;
  scores.values.resize(net.n_markets);
  for (int j = 0; j < net.n_markets; ++j) {
    scores.values[j] = static_cast<double>(net.market_firms[j].size());
  }
  return scores;
}

CentralityScores betweenness(const MarketNetwork& net) {
  const auto adj = node_adjacency(net);
  const int n_nodes = static_cast<int>(adj.size());
  Eigen::VectorXd accumulated = Eigen::VectorXd::Zero(net.n_markets);

  // Shortest-path counting sweep from every firm; the dependency
  // accumulation credits only firm targets, so each market collects
  // sigma_st(m)/sigma_st over ordered firm pairs. Halved at the end.
  std::vector<int> dist(n_nodes), order;
  std::vector<double> sigma(n_nodes), delta(n_nodes);
  order.reserve(n_nodes);
  for (int source = 0; source < net.n_firms; ++source) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    order.clear();

    std::queue<int> frontier;
    dist[source] = 0;
    sigma[source] = 1.0;
    frontier.push(source);
    while (!frontier.empty()) {
      int v = frontier.front();
      frontier.pop();
      order.push_back(v);
      for (int w : adj[v]) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          frontier.push(w);
        }
        if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      int w = *it;
      const bool is_target = w < net.n_firms && w != source;
      for (int v : adj[w]) {
        if (dist[v] == dist[w] - 1) {
          delta[v] += sigma[v] / sigma[w] * ((is_target ? 1.0 : 0.0) + delta[w]);
        }
      }
      if (w >= net.n_firms) accumulated[w - net.n_firms] += delta[w];
    }
  }

  CentralityScores scores;
  scores.measure = CentralityMeasure::betweenness;
  scores.values = 0.5 * accumulated;
  return scores;
}

CentralityScores closeness(const MarketNetwork& net) {
  const auto adj = node_adjacency(net);
  const int n_nodes = static_cast<int>(adj.size());

  CentralityScores scores;
  scores.measure = CentralityMeasure::closeness;
  scores.values.resize(net.n_markets);

  std::vector<int> dist(n_nodes);
  for (int j = 0; j < net.n_markets; ++j) {
    std::fill(dist.begin(), dist.end(), -1);
    std::queue<int> frontier;
    const int start = net.n_firms + j;
    dist[start] = 0;
    frontier.push(start);
    double total = 0.0;
    while (!frontier.empty()) {
      int v = frontier.front();
      frontier.pop();
      if (v < net.n_firms) total += 1.0 / static_cast<double>(dist[v]);
      for (int w : adj[v]) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          frontier.push(w);
        }
      }
    }
    scores.values[j] = total;
  }
  return scores;
}

}  // namespace cournot
