#include "cournot/policy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cournot/rng.hpp"

namespace cournot {

namespace {

constexpr double kPriceBoundMargin = 1e-9;  // keeps eps strictly below alpha/beta

bool ascending_kind(StrategyKind kind) {
  return kind == StrategyKind::AscDeg || kind == StrategyKind::AscBet ||
         kind == StrategyKind::AscCL;
}

}  // namespace

StrategyKind strategy_from_string(const std::string& name) {
  for (StrategyKind kind : kAllStrategies) {
    if (to_string(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown strategy '" + name + "'");
}

std::string to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::Linear: return "Linear";
    case StrategyKind::AscDeg: return "AscDeg";
    case StrategyKind::DescDeg: return "DescDeg";
    case StrategyKind::AscBet: return "AscBet";
    case StrategyKind::DescBet: return "DescBet";
    case StrategyKind::AscCL: return "AscCL";
    case StrategyKind::DescCL: return "DescCL";
    case StrategyKind::Random: return "Random";
  }
  throw std::invalid_argument("unknown strategy kind");
}

Eigen::VectorXd strategy_scores(const Strategy& strategy, const CournotGame& game) {
  switch (strategy.kind) {
    case StrategyKind::Linear:
      return strategy.zeta_mode == ZetaMode::paper
                 ? zeta_paper(game)
                 : zeta_gradient(game, strategy.variant);
    case StrategyKind::AscDeg:
    case StrategyKind::DescDeg:
      return degree(game.network()).values;
    case StrategyKind::AscBet:
    case StrategyKind::DescBet:
      return betweenness(game.network()).values;
    case StrategyKind::AscCL:
    case StrategyKind::DescCL:
      return closeness(game.network()).values;
    case StrategyKind::Random:
      return Eigen::VectorXd();
  }
  throw std::invalid_argument("unknown strategy kind");
}

std::vector<int> rank_markets(const Strategy& strategy, const MarketNetwork& net,
                              std::optional<Eigen::VectorXd> scores) {
  const int m = net.n_markets;
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);

  if (strategy.kind == StrategyKind::Random) {
    rng::Engine gen(strategy.seed);
    rng::shuffle(gen, order);
    return order;
  }

  if (!scores) {
    switch (strategy.kind) {
      case StrategyKind::AscDeg:
      case StrategyKind::DescDeg:
        scores = degree(net).values;
        break;
      case StrategyKind::AscBet:
      case StrategyKind::DescBet:
        scores = betweenness(net).values;
        break;
      case StrategyKind::AscCL:
      case StrategyKind::DescCL:
        scores = closeness(net).values;
        break;
      default:
        throw std::invalid_argument("Linear ranking needs precomputed scores");
    }
  }
  if (scores->size() != m) {
    throw std::invalid_argument("score vector size does not match market count");
  }

  const bool ascending = ascending_kind(strategy.kind);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double sa = (*scores)[a], sb = (*scores)[b];
    if (sa != sb) return ascending ? sa < sb : sa > sb;
    return a < b;
  });
  if (strategy.kind == StrategyKind::Linear && strategy.only_positive) {
    std::erase_if(order, [&](int k) { return (*scores)[k] <= 0.0; });
  }
  return order;
}

Allocation allocate(const MarketNetwork& net, const GameParams& params,
                    const std::vector<int>& ordering, double budget, double q_t,
                    std::optional<Strategy> strategy) {
  params.validate(net);
  if (!(budget >= 0.0)) throw std::invalid_argument("budget must be nonnegative");
  if (!(q_t >= 0.0)) throw std::invalid_argument("q_t must be nonnegative");
  std::vector<char> seen(net.n_markets, 0);
  for (int r : ordering) {
    if (r < 0 || r >= net.n_markets || seen[r]) {
      throw std::invalid_argument("ordering is not a permutation of market indices");
    }
    seen[r] = 1;
  }

  Allocation alloc;
  alloc.eps = ShockVector::Zero(net.n_markets);
  alloc.order_used = ordering;
  alloc.strategy = std::move(strategy);

  double supplied = 0.0;
  const double max_supply = budget > 0.0 ? std::sqrt(budget / params.cost) : 0.0;
  for (int r : ordering) {
    if (!(params.cost * supplied * supplied < budget)) break;
    const double room = max_supply - supplied;
    // Below one part in 1e14 of the total the remaining room is rounding
    // noise from the running sum; treat the budget as exhausted.
    if (room <= max_supply * 1e-14) break;
    const double price_cap = params.alpha[r] / params.beta * (1.0 - kPriceBoundMargin);
    const double shock = std::max(0.0, std::min({q_t, price_cap, room}));
    alloc.eps[r] = shock;
    supplied += shock;
  }
  alloc.total_supply = supplied;
  alloc.cost = params.cost * supplied * supplied;
  return alloc;
}

FeasibilityReport check_feasibility(const ShockVector& eps, const GameParams& params,
                                    double budget) {
  if (eps.size() != static_cast<Eigen::Index>(params.alpha.size())) {
    throw std::invalid_argument("shock vector size does not match alpha");
  }
  FeasibilityReport report;
  double total = 0.0;
  for (Eigen::Index k = 0; k < eps.size(); ++k) {
    std::ostringstream where;
    where << "eps[" << k << "] = " << eps[k];
    if (!(eps[k] >= 0.0)) {
      report.violations.push_back(where.str() + " is negative");
    }
    if (eps[k] > params.q_t) {
      std::ostringstream msg;
      msg << where.str() << " exceeds the cap q_t = " << params.q_t;
      report.violations.push_back(msg.str());
    }
    if (!(eps[k] < params.alpha[k] / params.beta)) {
      std::ostringstream msg;
      msg << where.str() << " reaches the price bound alpha/beta = "
          << params.alpha[k] / params.beta;
      report.violations.push_back(msg.str());
    }
    total += eps[k];
  }
  const double cost = params.cost * total * total;
  // Tiny relative slack: the total is accumulated in a different order than
  // the allocator's running sum.
  if (cost > budget * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "cost c S^2 = " << cost << " exceeds the budget " << budget;
    report.violations.push_back(msg.str());
  }
  return report;
}

}  // namespace cournot
