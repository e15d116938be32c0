#include "cournot/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "format.hpp"

namespace cournot {

namespace {

using detail::format_double;

void validate_config(const SweepConfig& config) {
  if (config.budget_grid.empty()) {
    throw std::invalid_argument("budget grid is empty");
  }
  if (config.budget_grid.front() != 0.0) {
    throw std::invalid_argument("budget grid must start at 0");
  }
  for (std::size_t i = 1; i < config.budget_grid.size(); ++i) {
    if (!(config.budget_grid[i] > config.budget_grid[i - 1])) {
      throw std::invalid_argument("budget grid must be strictly increasing");
    }
  }
  if (config.random_trials < 1) {
    throw std::invalid_argument("random_trials must be at least 1");
  }
  if (config.strategies.empty()) {
    throw std::invalid_argument("no strategies selected");
  }
  if (!(config.q_t >= 0.0)) {
    throw std::invalid_argument("q_t must be nonnegative");
  }
}

// Requested strategies in the fixed canonical order, deduplicated.
std::vector<StrategyKind> canonical_strategies(const std::vector<StrategyKind>& requested) {
  std::vector<StrategyKind> out;
  for (StrategyKind kind : kAllStrategies) {
    if (std::find(requested.begin(), requested.end(), kind) != requested.end()) {
      out.push_back(kind);
    }
  }
  return out;
}

}  // namespace

std::vector<double> default_budget_grid(const GameParams& params, double q_t, int points) {
  if (points < 1) throw std::invalid_argument("grid needs at least one point");
  double saturation_supply = 0.0;
  for (double a : params.alpha) {
    saturation_supply += std::min(q_t, a / params.beta);
  }
  const double saturation_budget =
      params.cost * saturation_supply * saturation_supply;
  if (saturation_budget <= 0.0 || points == 1) return {0.0};

  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) {
    grid[i] = saturation_budget * static_cast<double>(i) / (points - 1);
  }
  return grid;
}

SweepResult run_sweep(const CournotGame& game, const SweepConfig& config) {
  validate_config(config);
  const MarketNetwork& net = game.network();
  const GameParams& params = game.params();

  SweepResult result;
  result.config = config;
  result.config.strategies = canonical_strategies(config.strategies);
  result.welfare_at_zero =
      game.welfare_at(ShockVector::Zero(net.n_markets), config.variant);

  // Orderings are budget-independent; resolve them once. Linear is always
  // needed for the difference column.
  const Strategy linear_strategy{StrategyKind::Linear, 0, config.zeta_mode,
                                 config.variant, config.only_positive};
  result.orderings[StrategyKind::Linear] =
      rank_markets(linear_strategy, net, strategy_scores(linear_strategy, game));
  const bool want_random =
      std::find(result.config.strategies.begin(), result.config.strategies.end(),
                StrategyKind::Random) != result.config.strategies.end();
  for (StrategyKind kind : result.config.strategies) {
    if (kind == StrategyKind::Linear || kind == StrategyKind::Random) continue;
    result.orderings[kind] = rank_markets(Strategy{kind}, net);
  }
  if (want_random) {
    for (int trial = 0; trial < config.random_trials; ++trial) {
      Strategy random_strategy{StrategyKind::Random};
      random_strategy.seed = config.seed + static_cast<std::uint64_t>(trial);
      result.random_orderings.push_back(rank_markets(random_strategy, net));
    }
  }

  auto evaluate = [&](const std::vector<int>& ordering, double budget) {
    Allocation alloc = allocate(net, params, ordering, budget, config.q_t);
    Eigen::VectorXd q = game.equilibrium(alloc.eps);
    return game.social_welfare(q, alloc.eps, config.variant);
  };

  for (double budget : result.config.budget_grid) {
    const double sw_linear = evaluate(result.orderings[StrategyKind::Linear], budget);
    std::vector<double> trial_welfare;
    if (want_random) {
      trial_welfare.reserve(result.random_orderings.size());
      for (const auto& ordering : result.random_orderings) {
        trial_welfare.push_back(evaluate(ordering, budget));
      }
    }
    for (StrategyKind kind : result.config.strategies) {
      double sw = 0.0;
      if (kind == StrategyKind::Linear) {
        sw = sw_linear;
      } else if (kind == StrategyKind::Random) {
        double sum = 0.0;
        for (double w : trial_welfare) sum += w;
        sw = sum / static_cast<double>(trial_welfare.size());
      } else {
        sw = evaluate(result.orderings[kind], budget);
      }
      result.rows.push_back({budget, kind, sw, sw_linear - sw});
    }
    if (want_random) {
      result.random_trial_welfare.push_back(std::move(trial_welfare));
    }
  }
  return result;
}

void write_trajectories_csv(const SweepResult& result, std::ostream& out) {
  out << "budget,strategy,social_welfare,linear_minus_strategy\n";
  for (const TrajectoryRow& row : result.rows) {
    out << format_double(row.budget) << ',' << to_string(row.strategy) << ','
        << format_double(row.social_welfare) << ','
        << format_double(row.linear_minus_strategy) << '\n';
  }
}

void write_trajectories_csv(const SweepResult& result, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  write_trajectories_csv(result, out);
  if (!out) throw std::runtime_error("write failed for " + file.string());
}

namespace {

struct PlotGroup {
  const char* name;
  std::vector<StrategyKind> kinds;
};

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

const PlotGroup kPlotGroups[] = {
    {"ascending", {StrategyKind::AscDeg, StrategyKind::AscBet, StrategyKind::AscCL}},
    {"descending", {StrategyKind::DescDeg, StrategyKind::DescBet, StrategyKind::DescCL}},
    {"random", {StrategyKind::Random}},
};

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c"};

void write_svg_chart(const std::filesystem::path& file,
                     const std::vector<std::pair<StrategyKind, std::vector<std::pair<double, double>>>>& series) {
  const double width = 720, height = 480;
  const double left = 80, right = 30, top = 45, bottom = 55;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double x_max = 0.0, y_min = 0.0, y_max = 0.0;
  for (const auto& [kind, points] : series) {
    for (const auto& [x, y] : points) {
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  }
  if (x_max <= 0.0) x_max = 1.0;
  double span = y_max - y_min;
  if (span <= 0.0) span = 1.0;
  y_min -= 0.05 * span;
  y_max += 0.05 * span;

  auto sx = [&](double x) { return left + plot_w * (x / x_max); };
  auto sy = [&](double y) { return top + plot_h * (1.0 - (y - y_min) / (y_max - y_min)); };

  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height
      << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"15\">"
      << "Welfare difference vs. Linear ordering</text>\n";

  // Axes with five ticks each.
  out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = x_max * i / 4.0;
    const double yv = y_min + (y_max - y_min) * i / 4.0;
    out << "<line x1=\"" << px(sx(xv)) << "\" y1=\"" << top + plot_h
        << "\" x2=\"" << px(sx(xv)) << "\" y2=\"" << top + plot_h + 5
        << "\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << px(sx(xv)) << "\" y=\"" << top + plot_h + 18
        << "\" text-anchor=\"middle\">" << tick_label(xv) << "</text>\n";
    out << "<line x1=\"" << left - 5 << "\" y1=\"" << px(sy(yv))
        << "\" x2=\"" << left << "\" y2=\"" << px(sy(yv))
        << "\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << left - 8 << "\" y=\"" << px(sy(yv) + 4)
        << "\" text-anchor=\"end\">" << tick_label(yv) << "</text>\n";
  }
  out << "</g>\n";
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"#333\"/>\n";
  // Horizontal zero line.
  if (y_min < 0.0 && y_max > 0.0) {
    out << "<line x1=\"" << left << "\" y1=\"" << px(sy(0.0)) << "\" x2=\""
        << left + plot_w << "\" y2=\"" << px(sy(0.0))
        << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  }
  out << "<text x=\"" << width / 2 << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
      << "budget B</text>\n";
  out << "<text x=\"18\" y=\"" << top + plot_h / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
      << "transform=\"rotate(-90 18 " << top + plot_h / 2 << ")\">"
      << "SW_Linear(B) - SW_A(B)</text>\n";

  int color = 0;
  for (const auto& [kind, points] : series) {
    out << "<polyline fill=\"none\" stroke=\"" << kPalette[color % 3]
        << "\" stroke-width=\"1.6\" points=\"";
    for (const auto& [x, y] : points) {
      out << px(sx(x)) << ',' << px(sy(y)) << ' ';
    }
    out << "\"/>\n";
    out << "<text x=\"" << left + plot_w - 8 << "\" y=\"" << top + 16 + 16 * color
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\""
        << kPalette[color % 3] << "\">" << to_string(kind) << "</text>\n";
    ++color;
  }
  out << "</svg>\n";
  if (!out) throw std::runtime_error("write failed for " + file.string());
}

}  // namespace

std::vector<std::filesystem::path> write_difference_plots(
    const SweepResult& result, const std::filesystem::path& out_dir) {
  std::vector<std::filesystem::path> written;
  for (const PlotGroup& group : kPlotGroups) {
    std::vector<std::pair<StrategyKind, std::vector<std::pair<double, double>>>> series;
    for (StrategyKind kind : group.kinds) {
      std::vector<std::pair<double, double>> points;
      for (const TrajectoryRow& row : result.rows) {
        if (row.strategy == kind) {
          points.emplace_back(row.budget, row.linear_minus_strategy);
        }
      }
      if (!points.empty()) series.emplace_back(kind, std::move(points));
    }
    if (series.empty()) continue;
    std::filesystem::path file =
        out_dir / (std::string("diff_") + group.name + ".svg");
    write_svg_chart(file, series);
    written.push_back(file);
  }
  return written;
}

}  // namespace cournot
