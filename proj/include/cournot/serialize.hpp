#pragma once

#include <filesystem>
#include <json.hpp>
#include <vector>

#include "cournot/policy.hpp"
#include "cournot/sensitivity.hpp"

namespace cournot {

nlohmann::json stats_json(const NetworkStats& s);

/// Keys: q_star, prices, firm_profits, consumer_surplus, welfare (by variant
/// name), plus the id mapping the vectors index into.
nlohmann::json outcome_json(const EquilibriumOutcome& outcome, const MarketNetwork& net);

nlohmann::json sensitivity_json(const SensitivityReport& report, const MarketNetwork& net,
                                bool include_jacobian = false);

/// Keys: strategy, epsilon (market index order), total_supply, cost, order_used.
nlohmann::json allocation_json(const Allocation& alloc, const MarketNetwork& net);

/// Reads a per-market value column from a CSV with header `market_id,<name>`.
/// Every market in the network must appear exactly once.
std::vector<double> read_market_values(const std::filesystem::path& file,
                                       const MarketNetwork& net,
                                       const std::string& column_name);

}  // namespace cournot
