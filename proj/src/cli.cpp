#include "cournot/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "cournot/equilibrium.hpp"
#include "cournot/policy.hpp"
#include "cournot/sensitivity.hpp"
#include "cournot/serialize.hpp"
#include "cournot/sweep.hpp"
#include "format.hpp"

namespace fs = std::filesystem;

namespace cournot::cli {

namespace {

struct CommonOpts {
  std::string edges;
  std::string alpha = "10";  // number or CSV path
  double beta = 1.0;
  double cost = 1.0;
  double q_t = -1.0;  // negative: default to 0.05 * min(alpha/beta)
  std::string variant = "with_government";
  std::string zeta = "gradient";
  std::uint64_t seed = 0;
  std::string out;
};

void add_common_flags(CLI::App* cmd, CommonOpts& opts, bool with_edges = true) {
  if (with_edges) {
    cmd->add_option("--edges", opts.edges, "edge CSV (header firm_id,market_id)")
        ->required();
  }
  cmd->add_option("--alpha", opts.alpha,
                  "demand intercept: a number or a CSV path (market_id,alpha)");
  cmd->add_option("--beta", opts.beta, "demand slope");
  cmd->add_option("--cost", opts.cost, "production cost coefficient");
  cmd->add_option("--qt", opts.q_t,
                  "per-market shock cap (default: 0.05 * min alpha/beta)");
  cmd->add_option("--variant", opts.variant, "welfare variant")
      ->check(CLI::IsMember({"eq7", "components", "with_government"}));
  cmd->add_option("--zeta", opts.zeta, "ranking coefficient for Linear")
      ->check(CLI::IsMember({"paper", "gradient"}));
  cmd->add_option("--seed", opts.seed, "random seed");
  cmd->add_option("--out", opts.out, "output directory");
}

std::optional<double> parse_number(const std::string& text) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

GameParams resolve_params(const CommonOpts& opts, const MarketNetwork& net) {
  GameParams params;
  if (auto value = parse_number(opts.alpha)) {
    params.alpha.assign(static_cast<std::size_t>(net.n_markets), *value);
  } else {
    params.alpha = read_market_values(opts.alpha, net, "alpha");
  }
  params.beta = opts.beta;
  params.cost = opts.cost;
  params.validate(net);
  params.q_t = opts.q_t >= 0.0 ? opts.q_t : 0.05 * params.min_alpha() / params.beta;
  return params;
}

void emit(const nlohmann::json& payload, const std::string& out_dir,
          const std::string& filename) {
  std::cout << payload.dump(2) << "\n";
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    std::ofstream file(fs::path(out_dir) / filename);
    if (!file) throw std::runtime_error("cannot write " + filename + " under " + out_dir);
    file << payload.dump(2) << "\n";
  }
}

std::vector<std::string> split_csv_list(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, comma - start));
    start = comma + 1;
  }
  return parts;
}

Strategy make_strategy(StrategyKind kind, const CommonOpts& opts, bool only_positive) {
  Strategy strategy;
  strategy.kind = kind;
  strategy.seed = opts.seed;
  strategy.zeta_mode = zeta_mode_from_string(opts.zeta);
  strategy.variant = welfare_variant_from_string(opts.variant);
  strategy.only_positive = only_positive;
  return strategy;
}

int run_gen(const CommonOpts& opts, int firms, int markets, int count) {
  MarketNetwork net = generate_synthetic(firms, markets, count, opts.seed);
  const fs::path dir = opts.out.empty() ? fs::path(".") : fs::path(opts.out);
  fs::create_directories(dir);
  const fs::path file = dir / "edges.csv";
  save_network(net, file);
  nlohmann::json summary = stats_json(stats(net));
  summary["edges_file"] = file.string();
  summary["seed"] = opts.seed;
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int run_stats(const CommonOpts& opts, const std::string& expect) {
  std::optional<ExpectedCounts> expected;
  if (!expect.empty()) {
    auto parts = split_csv_list(expect);
    if (parts.size() != 3) {
      throw std::invalid_argument("--expect wants firms,markets,edges");
    }
    expected = ExpectedCounts{std::stoi(parts[0]), std::stoi(parts[1]),
                              std::stoi(parts[2])};
  }
  MarketNetwork net = load_network(opts.edges, expected);
  emit(stats_json(stats(net)), opts.out, "stats.json");
  return 0;
}

int run_solve(const CommonOpts& opts, const std::string& eps_path) {
  MarketNetwork net = load_network(opts.edges);
  GameParams params = resolve_params(opts, net);
  CournotGame game(std::move(net), params);
  ShockVector eps = ShockVector::Zero(game.network().n_markets);
  if (!eps_path.empty()) {
    auto values = read_market_values(eps_path, game.network(), "eps");
    eps = Eigen::Map<const Eigen::VectorXd>(values.data(),
                                            static_cast<Eigen::Index>(values.size()));
  }
  emit(outcome_json(game.outcome(eps), game.network()), opts.out, "solve.json");
  return 0;
}

int run_zeta(const CommonOpts& opts, bool with_jacobian) {
  MarketNetwork net = load_network(opts.edges);
  GameParams params = resolve_params(opts, net);
  CournotGame game(std::move(net), params);
  SensitivityReport report =
      sensitivity_report(game, welfare_variant_from_string(opts.variant));
  emit(sensitivity_json(report, game.network(), with_jacobian), opts.out, "zeta.json");
  return 0;
}

int run_allocate(const CommonOpts& opts, const std::string& strategy_name,
                 double budget, bool only_positive) {
  MarketNetwork net = load_network(opts.edges);
  GameParams params = resolve_params(opts, net);
  params.budget = budget;
  Strategy strategy = make_strategy(strategy_from_string(strategy_name), opts,
                                    only_positive);

  std::optional<Eigen::VectorXd> scores;
  if (strategy.kind == StrategyKind::Linear) {
    CournotGame game(net, params);
    scores = strategy_scores(strategy, game);
  }
  std::vector<int> ordering = rank_markets(strategy, net, scores);
  Allocation alloc = allocate(net, params, ordering, budget, params.q_t, strategy);
  emit(allocation_json(alloc, net), opts.out, "allocation.json");
  return 0;
}

int run_sweep_cmd(const CommonOpts& opts, const std::string& budgets,
                  const std::string& strategies, int random_trials,
                  bool emit_allocations, bool only_positive) {
  MarketNetwork net = load_network(opts.edges);
  GameParams params = resolve_params(opts, net);
  CournotGame game(std::move(net), params);

  SweepConfig config;
  config.q_t = params.q_t;
  config.seed = opts.seed;
  config.random_trials = random_trials;
  config.variant = welfare_variant_from_string(opts.variant);
  config.zeta_mode = zeta_mode_from_string(opts.zeta);
  config.only_positive = only_positive;

  if (auto count = parse_number(budgets);
      count && budgets.find(',') == std::string::npos && *count >= 1.0 &&
      *count <= 100000.0 && *count == std::floor(*count)) {
    config.budget_grid = default_budget_grid(params, config.q_t, static_cast<int>(*count));
  } else {
    for (const std::string& piece : split_csv_list(budgets)) {
      auto value = parse_number(piece);
      if (!value) throw std::invalid_argument("bad budget value '" + piece + "'");
      config.budget_grid.push_back(*value);
    }
  }
  if (!strategies.empty()) {
    config.strategies.clear();
    for (const std::string& name : split_csv_list(strategies)) {
      config.strategies.push_back(strategy_from_string(name));
    }
  }

  SweepResult result = run_sweep(game, config);

  const fs::path dir = opts.out.empty() ? fs::path(".") : fs::path(opts.out);
  fs::create_directories(dir);
  const fs::path csv = dir / "trajectories.csv";
  write_trajectories_csv(result, csv);
  auto plots = write_difference_plots(result, dir);

  if (emit_allocations) {
    for (double budget : result.config.budget_grid) {
      for (const auto& [kind, ordering] : result.orderings) {
        Strategy strategy = make_strategy(kind, opts, only_positive);
        Allocation alloc =
            allocate(game.network(), params, ordering, budget, config.q_t, strategy);
        std::ofstream file(dir / ("allocation_" + to_string(kind) + "_" +
                                  detail::format_double(budget) + ".json"));
        file << allocation_json(alloc, game.network()).dump(2) << "\n";
      }
      for (std::size_t trial = 0; trial < result.random_orderings.size(); ++trial) {
        Strategy strategy{StrategyKind::Random};
        strategy.seed = config.seed + trial;
        Allocation alloc = allocate(game.network(), params,
                                    result.random_orderings[trial], budget,
                                    config.q_t, strategy);
        std::ofstream file(dir / ("allocation_Random_" +
                                  detail::format_double(budget) + "_t" +
                                  std::to_string(trial) + ".json"));
        file << allocation_json(alloc, game.network()).dump(2) << "\n";
      }
    }
  }

  nlohmann::json summary = {{"trajectories", csv.string()},
                            {"rows", result.rows.size()},
                            {"welfare_at_zero", result.welfare_at_zero},
                            {"budgets", result.config.budget_grid.size()},
                            {"plots", nlohmann::json::array()}};
  for (const auto& plot : plots) summary["plots"].push_back(plot.string());
  std::cout << summary.dump(2) << "\n";
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Networked Cournot competition: equilibria, welfare sensitivity "
               "and budgeted supply-shock strategies"};
  app.require_subcommand(1);

  CommonOpts opts;

  auto* gen = app.add_subcommand("gen", "generate a synthetic network");
  int gen_firms = 0, gen_markets = 0, gen_count = 0;
  gen->add_option("--firms", gen_firms)->required();
  gen->add_option("--markets", gen_markets)->required();
  gen->add_option("--count", gen_count, "number of edges")->required();
  add_common_flags(gen, opts, false);

  auto* stats_cmd = app.add_subcommand("stats", "network statistics as JSON");
  std::string expect;
  stats_cmd->add_option("--expect", expect, "required counts firms,markets,edges");
  add_common_flags(stats_cmd, opts);

  auto* solve = app.add_subcommand("solve", "equilibrium outcome as JSON");
  std::string eps_path;
  solve->add_option("--eps", eps_path, "shock CSV (market_id,eps); default zero");
  add_common_flags(solve, opts);

  auto* zeta = app.add_subcommand("zeta", "welfare-sensitivity report as JSON");
  bool with_jacobian = false;
  zeta->add_flag("--with-jacobian", with_jacobian, "include the dense Jacobian");
  add_common_flags(zeta, opts);

  auto* alloc = app.add_subcommand("allocate", "budgeted shock allocation as JSON");
  std::string strategy_name = "Linear";
  double budget = 0.0;
  bool only_positive = false;
  alloc->add_option("--strategy", strategy_name, "one of the eight strategies");
  alloc->add_option("--budget", budget)->required();
  alloc->add_flag("--only-positive", only_positive,
                  "Linear: skip markets with nonpositive coefficients");
  add_common_flags(alloc, opts);

  auto* sweep = app.add_subcommand("sweep", "budget sweep over strategies");
  std::string budgets = "50", strategies;
  int random_trials = 50;
  bool emit_allocations = false;
  sweep->add_option("--budgets", budgets, "grid point count or explicit list");
  sweep->add_option("--strategies", strategies, "comma-separated subset (default all)");
  sweep->add_option("--random-trials", random_trials);
  sweep->add_flag("--emit-allocations", emit_allocations);
  sweep->add_flag("--only-positive", only_positive,
                  "Linear: skip markets with nonpositive coefficients");
  add_common_flags(sweep, opts);

  try {
    app.parse(argc, argv);
    if (gen->parsed()) return run_gen(opts, gen_firms, gen_markets, gen_count);
    if (stats_cmd->parsed()) return run_stats(opts, expect);
    if (solve->parsed()) return run_solve(opts, eps_path);
    if (zeta->parsed()) return run_zeta(opts, with_jacobian);
    if (alloc->parsed()) return run_allocate(opts, strategy_name, budget, only_positive);
    if (sweep->parsed()) {
      return run_sweep_cmd(opts, budgets, strategies, random_trials,
                           emit_allocations, only_positive);
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::invalid_argument& e) {
    std::cerr << nlohmann::json{{"error", {{"type", "invalid_argument"},
                                           {"message", e.what()}}}}.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"error", {{"type", "runtime_error"},
                                           {"message", e.what()}}}}.dump() << "\n";
    return 1;
  }
}

}  // namespace cournot::cli
