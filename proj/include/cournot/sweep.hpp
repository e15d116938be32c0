#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <vector>

#include "cournot/policy.hpp"

namespace cournot {

struct SweepConfig {
  std::vector<double> budget_grid;  // strictly increasing, starts at 0
  std::vector<StrategyKind> strategies{kAllStrategies,
                                       kAllStrategies + std::size(kAllStrategies)};
  int random_trials = 50;
  WelfareVariant variant = WelfareVariant::with_government;
  ZetaMode zeta_mode = ZetaMode::gradient;
  bool only_positive = false;
  double q_t = 0.0;
  std::uint64_t seed = 0;
};

/// `points` evenly spaced budgets from 0 to the all-markets saturation budget
/// c (sum_k min(q_t, alpha_k/beta))^2. Collapses to {0} when that budget is 0.
std::vector<double> default_budget_grid(const GameParams& params, double q_t,
                                        int points = 50);

struct TrajectoryRow {
  double budget = 0.0;
  StrategyKind strategy = StrategyKind::Linear;
  double social_welfare = 0.0;
  double linear_minus_strategy = 0.0;  // SW_Linear(B) - SW_strategy(B)
};

struct SweepResult {
  SweepConfig config;  // as resolved (grid, canonical strategy order)
  std::vector<TrajectoryRow> rows;  // budget-major, strategies in config order
  std::map<StrategyKind, std::vector<int>> orderings;  // deterministic kinds
  std::vector<std::vector<int>> random_orderings;      // one per trial
  std::vector<std::vector<double>> random_trial_welfare;  // [budget][trial]
  double welfare_at_zero = 0.0;
};

/// Runs the full budget sweep: for every budget and strategy, rank markets,
/// allocate, solve the shocked equilibrium and evaluate the configured
/// welfare variant. Random rows carry the mean over `random_trials` trials
/// whose seeds are config.seed + trial index. The Linear trajectory is
/// always computed (the difference column needs it) even when not emitted.
SweepResult run_sweep(const CournotGame& game, const SweepConfig& config);

/// CSV with header budget,strategy,social_welfare,linear_minus_strategy.
void write_trajectories_csv(const SweepResult& result, std::ostream& out);
void write_trajectories_csv(const SweepResult& result, const std::filesystem::path& file);

/// One difference-curve chart per strategy group (ascending, descending,
/// random), written as diff_<group>.svg into `out_dir`. Returns the files.
std::vector<std::filesystem::path> write_difference_plots(
    const SweepResult& result, const std::filesystem::path& out_dir);

}  // namespace cournot
