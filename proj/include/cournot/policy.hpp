#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cournot/centrality.hpp"
#include "cournot/sensitivity.hpp"

namespace cournot {

/// The eight benchmarked allocation strategies.
enum class StrategyKind {
  Linear,   // descending ranking coefficient
  AscDeg,   // ascending degree
  DescDeg,  // descending degree
  AscBet,   // ascending betweenness
  DescBet,  // descending betweenness
  AscCL,    // ascending closeness
  DescCL,   // descending closeness
  Random,   // seeded uniform permutation
};

inline constexpr StrategyKind kAllStrategies[] = {
    StrategyKind::Linear, StrategyKind::AscDeg, StrategyKind::DescDeg,
    StrategyKind::AscBet, StrategyKind::DescBet, StrategyKind::AscCL,
    StrategyKind::DescCL, StrategyKind::Random};

StrategyKind strategy_from_string(const std::string& name);
std::string to_string(StrategyKind kind);

struct Strategy {
  StrategyKind kind = StrategyKind::Linear;
  std::uint64_t seed = 0;  // Random only
  // Linear only:
  ZetaMode zeta_mode = ZetaMode::gradient;
  WelfareVariant variant = WelfareVariant::with_government;
  bool only_positive = false;  // drop markets whose coefficient is <= 0
};

/// A feasible shock assignment together with how it was produced.
struct Allocation {
  ShockVector eps;              // per market
  std::vector<int> order_used;  // markets in the order they were visited
  double total_supply = 0.0;    // S = sum eps_k, accumulated in visit order
  double cost = 0.0;            // c S^2
  std::optional<Strategy> strategy;
};

struct FeasibilityReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Per-market scores backing a strategy's ordering: the ranking coefficient
/// for Linear, the centrality measure for the Asc*/Desc* kinds. Random has
/// no scores and returns an empty vector.
Eigen::VectorXd strategy_scores(const Strategy& strategy, const CournotGame& game);

/// Market visit order for a strategy. Score-based kinds sort by score
/// (direction per kind) with ties broken by ascending market index; Random
/// is a seeded uniform permutation. Linear requires `scores` (callers
/// compute them via strategy_scores) and throws without them; centrality
/// kinds compute their own measure when `scores` is absent.
std::vector<int> rank_markets(const Strategy& strategy, const MarketNetwork& net,
                              std::optional<Eigen::VectorXd> scores = std::nullopt);

/// Greedy budgeted assignment: walk `ordering` while c S^2 < B, giving each
/// market min(q_t, alpha_r/beta - margin, sqrt(B/c) - S). Markets never
/// reached keep eps = 0. A zero budget yields the zero allocation.
Allocation allocate(const MarketNetwork& net, const GameParams& params,
                    const std::vector<int>& ordering, double budget, double q_t,
                    std::optional<Strategy> strategy = std::nullopt);

/// Verifies 0 <= eps_k <= q_t, eps_k < alpha_k/beta and c (sum eps)^2 <= B;
/// collects violations instead of failing.
FeasibilityReport check_feasibility(const ShockVector& eps, const GameParams& params,
                                    double budget);

}  // namespace cournot
