#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "cournot/policy.hpp"
#include "fixtures.hpp"

using namespace cournot;
using fixtures::default_params;

TEST_CASE("strategy names round-trip") {
  for (StrategyKind kind : kAllStrategies) {
    CHECK(strategy_from_string(to_string(kind)) == kind);
  }
  CHECK_THROWS_AS(strategy_from_string("Greedy"), std::invalid_argument);
}

TEST_CASE("degree orderings on instance B") {
  MarketNetwork net = fixtures::instance_b();
  CHECK(rank_markets(Strategy{StrategyKind::DescDeg}, net) == std::vector<int>{0, 1});
  CHECK(rank_markets(Strategy{StrategyKind::AscDeg}, net) == std::vector<int>{1, 0});
}

TEST_CASE("ties break by ascending market index") {
  MarketNetwork net = fixtures::instance_b();
  Eigen::VectorXd tied(2);
  tied << 5.0, 5.0;
  Strategy linear{StrategyKind::Linear};
  CHECK(rank_markets(linear, net, tied) == std::vector<int>{0, 1});
  CHECK(rank_markets(Strategy{StrategyKind::AscDeg}, net, tied) == std::vector<int>{0, 1});
}

TEST_CASE("Linear ranking needs scores") {
  CHECK_THROWS_AS(rank_markets(Strategy{StrategyKind::Linear}, fixtures::instance_b()),
                  std::invalid_argument);
}

TEST_CASE("Linear ranking sorts coefficients descending") {
  MarketNetwork net = generate_synthetic(3, 4, 8, 5);
  Eigen::VectorXd scores(4);
  scores << 0.5, -2.0, 7.0, 0.5;
  Strategy linear{StrategyKind::Linear};
  CHECK(rank_markets(linear, net, scores) == std::vector<int>{2, 0, 3, 1});

  linear.only_positive = true;
  CHECK(rank_markets(linear, net, scores) == std::vector<int>{2, 0, 3});
}

TEST_CASE("random orderings are seeded permutations") {
  MarketNetwork net = generate_synthetic(135, 603, 2049, 7);
  Strategy random{StrategyKind::Random};
  random.seed = 99;
  std::vector<int> first = rank_markets(random, net);
  CHECK(rank_markets(random, net) == first);

  std::set<int> unique(first.begin(), first.end());
  CHECK(unique.size() == 603);

  std::set<std::vector<int>> permutations;
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    Strategy s{StrategyKind::Random};
    s.seed = 1000 + trial;
    permutations.insert(rank_markets(s, net));
  }
  CHECK(permutations.size() == 50);
}

TEST_CASE("allocation walks the ordering under the three caps") {
  MarketNetwork net_a = fixtures::instance_a();
  GameParams params_a = default_params(1);
  params_a.q_t = 0.5;

  SUBCASE("cap q_t binds") {
    Allocation alloc = allocate(net_a, params_a, {0}, 1.0, 0.5);
    CHECK(alloc.eps[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(alloc.total_supply == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(alloc.cost == doctest::Approx(0.25).epsilon(1e-12));
  }

  SUBCASE("budget cap binds") {
    Allocation alloc = allocate(net_a, params_a, {0}, 0.09, 0.5);
    CHECK(alloc.eps[0] == doctest::Approx(0.3).epsilon(1e-12));
  }

  SUBCASE("loop stops once the spent budget reaches B") {
    MarketNetwork net_b = fixtures::instance_b();
    GameParams params_b = default_params(2);
    params_b.q_t = 0.5;
    Allocation alloc = allocate(net_b, params_b, {1, 0}, 0.16, 0.5);
    CHECK(alloc.eps[1] == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(alloc.eps[0] == 0.0);
    CHECK(alloc.order_used == std::vector<int>{1, 0});
  }

  SUBCASE("zero budget allocates nothing") {
    Allocation alloc = allocate(net_a, params_a, {0}, 0.0, 0.5);
    CHECK(alloc.eps[0] == 0.0);
    CHECK(alloc.cost == 0.0);
  }

  SUBCASE("price bound binds when q_t is loose") {
    GameParams loose = params_a;
    loose.q_t = 50.0;
    Allocation alloc = allocate(net_a, loose, {0}, 1e6, 50.0);
    CHECK(alloc.eps[0] < 10.0);
    CHECK(alloc.eps[0] == doctest::Approx(10.0).epsilon(1e-8));
  }
}

TEST_CASE("allocation rejects malformed orderings") {
  MarketNetwork net = fixtures::instance_b();
  GameParams params = default_params(2);
  CHECK_THROWS_AS(allocate(net, params, {0, 0}, 1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(allocate(net, params, {2}, 1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(allocate(net, params, {0}, -1.0, 0.5), std::invalid_argument);
}

TEST_CASE("feasibility checks") {
  GameParams params = default_params(2);
  params.q_t = 0.5;

  SUBCASE("zero shock is feasible for any budget") {
    CHECK(check_feasibility(ShockVector::Zero(2), params, 0.0).ok());
    CHECK(check_feasibility(ShockVector::Zero(2), params, 100.0).ok());
  }

  SUBCASE("price bound violation") {
    GameParams p1 = default_params(1);
    p1.q_t = 20.0;
    ShockVector eps(1);
    eps << 11.0;
    FeasibilityReport report = check_feasibility(eps, p1, 1e6);
    CHECK(!report.ok());
    bool price_mentioned = false;
    for (const auto& v : report.violations) {
      if (v.find("price bound") != std::string::npos) price_mentioned = true;
    }
    CHECK(price_mentioned);
  }

  SUBCASE("budget violation") {
    ShockVector eps(2);
    eps << 0.4, 0.4;
    FeasibilityReport report = check_feasibility(eps, params, 0.5);
    CHECK(!report.ok());
    CHECK(report.violations.size() == 1);
    CHECK(report.violations[0].find("budget") != std::string::npos);
  }

  SUBCASE("cap and sign violations") {
    ShockVector eps(2);
    eps << 0.6, -0.1;
    FeasibilityReport report = check_feasibility(eps, params, 100.0);
    CHECK(report.violations.size() == 2);
  }
}

TEST_CASE("every produced allocation is feasible") {
  rng::Engine gen(31);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto inst = fixtures::random_instance(seed);
    inst.params.q_t = 0.04 * inst.params.min_alpha() / inst.params.beta;
    std::vector<int> ordering =
        rank_markets(Strategy{StrategyKind::DescDeg}, inst.net);
    for (int step = 0; step <= 20; ++step) {
      const double budget = 0.3 * step * rng::unit_double(gen);
      Allocation alloc =
          allocate(inst.net, inst.params, ordering, budget, inst.params.q_t);
      FeasibilityReport report = check_feasibility(alloc.eps, inst.params, budget);
      if (!report.ok()) {
        CAPTURE(report.violations.front());
        CHECK(report.ok());
      }
    }
  }
}

TEST_CASE("supply grows with the budget and saturates") {
  auto inst = fixtures::random_instance(40);
  inst.params.q_t = 0.05 * inst.params.min_alpha() / inst.params.beta;
  std::vector<int> ordering = rank_markets(Strategy{StrategyKind::AscDeg}, inst.net);

  double cap_total = 0.0;
  for (int k = 0; k < inst.net.n_markets; ++k) {
    cap_total += std::min(inst.params.q_t,
                          inst.params.alpha[k] / inst.params.beta * (1.0 - 1e-9));
  }
  const double saturation_budget = inst.params.cost * cap_total * cap_total;

  double previous = -1.0;
  for (int step = 0; step < 20; ++step) {
    const double budget = saturation_budget * 1.2 * step / 19.0;
    Allocation alloc = allocate(inst.net, inst.params, ordering, budget, inst.params.q_t);
    CHECK(alloc.total_supply >= previous);
    previous = alloc.total_supply;
  }

  Allocation full =
      allocate(inst.net, inst.params, ordering, saturation_budget * 1.0001,
               inst.params.q_t);
  for (int k = 0; k < inst.net.n_markets; ++k) {
    const double cap = std::min(inst.params.q_t,
                                inst.params.alpha[k] / inst.params.beta * (1.0 - 1e-9));
    CHECK(full.eps[k] == doctest::Approx(cap).epsilon(1e-12));
  }
}

TEST_CASE("positive shocks respect the visit order") {
  auto inst = fixtures::random_instance(8);
  inst.params.q_t = 0.05 * inst.params.min_alpha() / inst.params.beta;
  std::vector<int> ordering = rank_markets(Strategy{StrategyKind::DescCL}, inst.net);

  for (int step = 1; step <= 15; ++step) {
    const double budget = 0.002 * step * step;
    Allocation alloc = allocate(inst.net, inst.params, ordering, budget, inst.params.q_t);
    int last_positive = -1;
    for (std::size_t pos = 0; pos < ordering.size(); ++pos) {
      if (alloc.eps[ordering[pos]] > 0.0) last_positive = static_cast<int>(pos);
    }
    for (int pos = 0; pos < last_positive; ++pos) {
      const int market = ordering[pos];
      const double cap = std::min(inst.params.q_t,
                                  inst.params.alpha[market] / inst.params.beta *
                                      (1.0 - 1e-9));
      // Everything before the last positive market is filled to its cap.
      CHECK(alloc.eps[market] == doctest::Approx(cap).epsilon(1e-12));
    }
  }
}

TEST_CASE("allocations are deterministic") {
  auto inst = fixtures::random_instance(55);
  inst.params.q_t = 0.3;
  Strategy random{StrategyKind::Random};
  random.seed = 7;
  std::vector<int> ordering = rank_markets(random, inst.net);
  Allocation a = allocate(inst.net, inst.params, ordering, 0.37, 0.3, random);
  Allocation b = allocate(inst.net, inst.params, ordering, 0.37, 0.3, random);
  CHECK(a.eps == b.eps);
  CHECK(a.total_supply == b.total_supply);
  CHECK(a.cost == b.cost);
  CHECK(a.order_used == b.order_used);
}
