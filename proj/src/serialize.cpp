#include "cournot/serialize.hpp"

#include <fstream>
#include <stdexcept>

namespace cournot {

namespace {

nlohmann::json vector_json(const Eigen::VectorXd& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

nlohmann::json histogram_json(const std::map<int, int>& hist) {
  nlohmann::json obj = nlohmann::json::object();
  for (const auto& [degree, count] : hist) obj[std::to_string(degree)] = count;
  return obj;
}

}  // namespace

nlohmann::json stats_json(const NetworkStats& s) {
  return {{"firms", s.n_firms},
          {"markets", s.n_markets},
          {"edges", s.n_edges},
          {"firm_degree_histogram", histogram_json(s.firm_degree_histogram)},
          {"market_degree_histogram", histogram_json(s.market_degree_histogram)}};
}

nlohmann::json outcome_json(const EquilibriumOutcome& outcome, const MarketNetwork& net) {
  nlohmann::json welfare = nlohmann::json::object();
  for (const auto& [variant, value] : outcome.welfare) {
    welfare[to_string(variant)] = value;
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : net.edges) {
    edges.push_back({net.firm_ids[e.firm], net.market_ids[e.market]});
  }
  return {{"q_star", vector_json(outcome.q_star)},
          {"market_supply", vector_json(outcome.market_supply)},
          {"prices", vector_json(outcome.prices)},
          {"firm_profits", vector_json(outcome.firm_profits)},
          {"consumer_surplus", outcome.consumer_surplus},
          {"welfare", welfare},
          {"negative_edges", outcome.negative_edges},
          {"edges", edges},
          {"firm_ids", net.firm_ids},
          {"market_ids", net.market_ids}};
}

nlohmann::json sensitivity_json(const SensitivityReport& report, const MarketNetwork& net,
                                bool include_jacobian) {
  nlohmann::json out = {{"zeta_paper", nullptr},
                        {"zeta_gradient", vector_json(report.zeta_gradient)},
                        {"variant", to_string(report.variant)},
                        {"market_ids", net.market_ids}};
  if (report.zeta_paper) out["zeta_paper"] = vector_json(*report.zeta_paper);
  if (include_jacobian) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index e = 0; e < report.jacobian.rows(); ++e) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index r = 0; r < report.jacobian.cols(); ++r) {
        row.push_back(report.jacobian(e, r));
      }
      rows.push_back(std::move(row));
    }
    out["jacobian"] = std::move(rows);
  }
  return out;
}

nlohmann::json allocation_json(const Allocation& alloc, const MarketNetwork& net) {
  nlohmann::json out = {{"strategy", nullptr},
                        {"epsilon", vector_json(alloc.eps)},
                        {"total_supply", alloc.total_supply},
                        {"cost", alloc.cost},
                        {"order_used", alloc.order_used},
                        {"market_ids", net.market_ids}};
  if (alloc.strategy) {
    out["strategy"] = to_string(alloc.strategy->kind);
    if (alloc.strategy->kind == StrategyKind::Random) {
      out["seed"] = alloc.strategy->seed;
    }
    if (alloc.strategy->kind == StrategyKind::Linear) {
      out["zeta_mode"] = to_string(alloc.strategy->zeta_mode);
      out["variant"] = to_string(alloc.strategy->variant);
    }
  }
  return out;
}

std::vector<double> read_market_values(const std::filesystem::path& file,
                                       const MarketNetwork& net,
                                       const std::string& column_name) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(file.string() + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::string expected_header = "market_id," + column_name;
  if (line != expected_header) {
    throw std::runtime_error(file.string() + ": expected header '" + expected_header + "'");
  }

  std::vector<double> values(net.n_markets);
  std::vector<char> seen(net.n_markets, 0);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::runtime_error(file.string() + ":" + std::to_string(lineno) +
                               ": expected market_id,value");
    }
    const std::string id = line.substr(0, comma);
    int index = -1;
    for (int j = 0; j < net.n_markets; ++j) {
      if (net.market_ids[j] == id) {
        index = j;
        break;
      }
    }
    if (index < 0) {
      throw std::runtime_error(file.string() + ":" + std::to_string(lineno) +
                               ": unknown market id '" + id + "'");
    }
    if (seen[index]) {
      throw std::runtime_error(file.string() + ":" + std::to_string(lineno) +
                               ": duplicate market id '" + id + "'");
    }
    seen[index] = 1;
    try {
      values[index] = std::stod(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw std::runtime_error(file.string() + ":" + std::to_string(lineno) +
                               ": bad numeric value");
    }
  }
  for (int j = 0; j < net.n_markets; ++j) {
    if (!seen[j]) {
      throw std::runtime_error(file.string() + ": missing value for market '" +
                               net.market_ids[j] + "'");
    }
  }
  return values;
}

}  // namespace cournot
