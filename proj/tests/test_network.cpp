#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "cournot/network.hpp"
#include "cournot/params.hpp"
#include "fixtures.hpp"

using namespace cournot;

TEST_CASE("load maps ids in first-appearance order") {
  fixtures::TempDir tmp("net-load");
  auto file = fixtures::write_file(tmp.file("edges.csv"),
                                   "firm_id,market_id\n"
                                   "acme,paint\n"
                                   "zeta-corp,paint\n"
                                   "acme,rope\n");
  MarketNetwork net = load_network(file);
  CHECK(net.n_firms == 2);
  CHECK(net.n_markets == 2);
  CHECK(net.n_edges() == 3);
  CHECK(net.firm_ids == std::vector<std::string>{"acme", "zeta-corp"});
  CHECK(net.market_ids == std::vector<std::string>{"paint", "rope"});
  // Canonical order sorts by (firm, market) index.
  CHECK(net.edges == std::vector<Edge>{{0, 0}, {0, 1}, {1, 0}});
  CHECK(net.edge_of(1, 0) == 2);
  CHECK(net.edge_of(1, 1) == -1);
}

TEST_CASE("minimal one-edge file") {
  fixtures::TempDir tmp("net-min");
  auto file = fixtures::write_file(tmp.file("edges.csv"), "firm_id,market_id\nf1,m1\n");
  MarketNetwork net = load_network(file);
  CHECK(net.n_firms == 1);
  CHECK(net.n_markets == 1);
  CHECK(net.n_edges() == 1);
}

TEST_CASE("duplicate edge is rejected naming the pair") {
  fixtures::TempDir tmp("net-dup");
  auto file = fixtures::write_file(tmp.file("edges.csv"),
                                   "firm_id,market_id\nf1,m1\nf1,m1\n");
  try {
    load_network(file);
    FAIL("expected rejection");
  } catch (const std::exception& e) {
    const std::string msg = e.what();
    CHECK(msg.find("duplicate") != std::string::npos);
    CHECK(msg.find("f1") != std::string::npos);
    CHECK(msg.find("m1") != std::string::npos);
  }
}

TEST_CASE("bad header and malformed rows are rejected") {
  fixtures::TempDir tmp("net-bad");
  CHECK_THROWS(load_network(fixtures::write_file(tmp.file("a.csv"), "firm,market\nf,m\n")));
  CHECK_THROWS(load_network(fixtures::write_file(tmp.file("b.csv"),
                                                 "firm_id,market_id\nf1,m1,extra\n")));
  CHECK_THROWS(load_network(fixtures::write_file(tmp.file("c.csv"), "firm_id,market_id\n")));
}

TEST_CASE("expected counts validated against the file") {
  fixtures::TempDir tmp("net-counts");
  MarketNetwork net = generate_synthetic(135, 603, 2049, 7);
  auto file = tmp.file("drug.csv");
  save_network(net, file);

  MarketNetwork reloaded = load_network(file, ExpectedCounts{135, 603, 2049});
  CHECK(reloaded.n_firms == 135);
  CHECK(reloaded.n_markets == 603);
  CHECK(reloaded.n_edges() == 2049);

  try {
    load_network(file, ExpectedCounts{135, 603, 2050});
    FAIL("expected count mismatch rejection");
  } catch (const std::exception& e) {
    const std::string msg = e.what();
    CHECK(msg.find("2049") != std::string::npos);  // actual counts reported
    CHECK(msg.find("2050") != std::string::npos);
  }
}

TEST_CASE("isolated nodes are rejected") {
  CHECK_THROWS_AS(make_network(2, 1, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_network(1, 2, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_network(1, 1, {{0, 1}}), std::invalid_argument);
}

TEST_CASE("generator hits exact counts with full coverage") {
  MarketNetwork net = generate_synthetic(135, 603, 2049, 7);
  CHECK(net.n_firms == 135);
  CHECK(net.n_markets == 603);
  CHECK(net.n_edges() == 2049);
  for (const auto& markets : net.firm_markets) CHECK(!markets.empty());
  for (const auto& firms : net.market_firms) CHECK(!firms.empty());
}

TEST_CASE("generator is deterministic per seed and varies across seeds") {
  CHECK(generate_synthetic(135, 603, 2049, 42) == generate_synthetic(135, 603, 2049, 42));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    MarketNetwork a = generate_synthetic(135, 603, 2049, seed);
    MarketNetwork b = generate_synthetic(135, 603, 2049, seed + 1000);
    CHECK(a.edges != b.edges);
  }
}

TEST_CASE("forced shapes") {
  MarketNetwork one = generate_synthetic(1, 1, 1, 0);
  CHECK(one.edges == std::vector<Edge>{{0, 0}});

  MarketNetwork complete = generate_synthetic(2, 2, 4, 3);
  CHECK(complete.edges == std::vector<Edge>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
}

TEST_CASE("infeasible generator counts are rejected") {
  CHECK_THROWS_AS(generate_synthetic(2, 2, 5, 0), std::invalid_argument);
  CHECK_THROWS_AS(generate_synthetic(3, 3, 2, 0), std::invalid_argument);
  CHECK_THROWS_AS(generate_synthetic(0, 3, 3, 0), std::invalid_argument);
}

TEST_CASE("edge-format round trip reproduces indices and order") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto inst = fixtures::random_instance(seed);
    fixtures::TempDir tmp("net-rt");
    auto file = tmp.file("edges.csv");
    save_network(inst.net, file);
    CHECK(load_network(file) == inst.net);
  }
}

TEST_CASE("edge_of inverts the edge list") {
  auto inst = fixtures::random_instance(77);
  for (int idx = 0; idx < inst.net.n_edges(); ++idx) {
    const Edge& e = inst.net.edges[idx];
    CHECK(inst.net.edge_of(e.firm, e.market) == idx);
  }
}

TEST_CASE("stats") {
  NetworkStats a = stats(fixtures::instance_a());
  CHECK(a.n_firms == 1);
  CHECK(a.n_markets == 1);
  CHECK(a.n_edges == 1);

  NetworkStats b = stats(fixtures::instance_b());
  CHECK(b.n_firms == 2);
  CHECK(b.n_markets == 2);
  CHECK(b.n_edges == 3);
  CHECK(b.market_degree_histogram == std::map<int, int>{{1, 1}, {2, 1}});
  CHECK(b.firm_degree_histogram == std::map<int, int>{{1, 1}, {2, 1}});

  NetworkStats big = stats(generate_synthetic(135, 603, 2049, 7));
  CHECK(big.n_firms == 135);
  CHECK(big.n_markets == 603);
  CHECK(big.n_edges == 2049);
  int firm_total = 0, market_total = 0;
  for (const auto& [degree, count] : big.firm_degree_histogram) firm_total += count;
  for (const auto& [degree, count] : big.market_degree_histogram) market_total += count;
  CHECK(firm_total == 135);
  CHECK(market_total == 603);
}

TEST_CASE("stats agree with an independent line scan") {
  auto inst = fixtures::random_instance(99);
  fixtures::TempDir tmp("net-scan");
  auto file = tmp.file("edges.csv");
  save_network(inst.net, file);

  std::ifstream in(file);
  std::string line;
  std::getline(in, line);  // header
  std::set<std::string> firms, markets;
  int edge_lines = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto comma = line.find(',');
    firms.insert(line.substr(0, comma));
    markets.insert(line.substr(comma + 1));
    ++edge_lines;
  }

  NetworkStats s = stats(load_network(file));
  CHECK(s.n_firms == static_cast<int>(firms.size()));
  CHECK(s.n_markets == static_cast<int>(markets.size()));
  CHECK(s.n_edges == edge_lines);
}

TEST_CASE("params validation") {
  MarketNetwork net = fixtures::instance_b();
  GameParams params = fixtures::default_params(2);
  CHECK(params.gamma() == doctest::Approx(0.25));
  CHECK_NOTHROW(params.validate(net));

  GameParams bad = params;
  bad.beta = 0.0;
  CHECK_THROWS_AS(bad.validate(net), std::invalid_argument);
  bad = params;
  bad.alpha[1] = -1.0;
  CHECK_THROWS_AS(bad.validate(net), std::invalid_argument);
  bad = params;
  bad.alpha.pop_back();
  CHECK_THROWS_AS(bad.validate(net), std::invalid_argument);
  bad = params;
  bad.q_t = -0.5;
  CHECK_THROWS_AS(bad.validate(net), std::invalid_argument);

  CHECK(params.uniform_alpha());
  CHECK(params.alpha_scalar() == 10.0);
  params.alpha[0] = 11.0;
  CHECK(!params.uniform_alpha());
  CHECK_THROWS_AS(params.alpha_scalar(), std::invalid_argument);
  CHECK(params.min_alpha() == 10.0);
  CHECK(params.max_alpha() == 11.0);
}
