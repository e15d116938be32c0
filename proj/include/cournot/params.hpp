#pragma once

#include <vector>

#include "cournot/network.hpp"

namespace cournot {

/// Model parameters. `beta` and `cost` are global scalars (the closed forms
/// rely on a single gamma); `alpha` may vary per market.
struct GameParams {
  std::vector<double> alpha;  // demand intercept per market, alpha_k > 0
  double beta = 1.0;          // demand slope, > 0
  double cost = 1.0;          // quadratic production-cost coefficient, > 0
  double q_t = 0.0;           // per-market shock cap, >= 0
  double budget = 0.0;        // government budget, >= 0

  // Derived, never stored: gamma = 1 / (2 (c + beta)).
  double gamma() const { return 1.0 / (2.0 * (cost + beta)); }

  bool uniform_alpha() const;
  /// The common intercept; throws if alpha varies across markets.
  double alpha_scalar() const;
  double min_alpha() const;
  double max_alpha() const;

  /// Checks positivity bounds and that alpha covers every market.
  void validate(const MarketNetwork& net) const;

  static GameParams uniform(int n_markets, double alpha, double beta, double cost);
};

}  // namespace cournot
