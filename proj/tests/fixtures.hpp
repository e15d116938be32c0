#pragma once

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "cournot/equilibrium.hpp"
#include "cournot/network.hpp"
#include "cournot/rng.hpp"

// Shared hand-checkable instances:
//   A: one firm, one market, one edge
//   B: firms f0,f1; markets m0,m1; edges (f0,m0),(f0,m1),(f1,m0)
//   C: two firms competing in a single market
namespace fixtures {

inline cournot::MarketNetwork instance_a() {
  return cournot::make_network(1, 1, {{0, 0}});
}

inline cournot::MarketNetwork instance_b() {
  return cournot::make_network(2, 2, {{0, 0}, {0, 1}, {1, 0}});
}

inline cournot::MarketNetwork instance_c() {
  return cournot::make_network(2, 1, {{0, 0}, {1, 0}});
}

// alpha = 10, beta = 1, c = 1 (gamma = 1/4).
inline cournot::GameParams default_params(int n_markets) {
  return cournot::GameParams::uniform(n_markets, 10.0, 1.0, 1.0);
}

struct RandomInstance {
  cournot::MarketNetwork net;
  cournot::GameParams params;
};

// Seeded instance with n, m <= max_nodes and edge count ~ density * n * m.
// alpha in [5, 15] (per market unless uniform_alpha), beta and c in [0.5, 2].
inline RandomInstance random_instance(std::uint64_t seed, int max_n = 8, int max_m = 8,
                                      double density = 0.5, bool uniform_alpha = false) {
  using namespace cournot;
  rng::Engine gen(seed * 0x9E3779B97F4A7C15ull + 1);
  const int n = 1 + static_cast<int>(rng::uniform_below(gen, max_n));
  const int m = 1 + static_cast<int>(rng::uniform_below(gen, max_m));
  const int cells = n * m;
  int edges = static_cast<int>(std::lround(density * cells));
  edges = std::max(edges, std::max(n, m));
  edges = std::min(edges, cells);

  RandomInstance inst{generate_synthetic(n, m, edges, gen()), {}};
  if (uniform_alpha) {
    inst.params = GameParams::uniform(m, rng::uniform_in(gen, 5.0, 15.0),
                                      rng::uniform_in(gen, 0.5, 2.0),
                                      rng::uniform_in(gen, 0.5, 2.0));
  } else {
    inst.params.beta = rng::uniform_in(gen, 0.5, 2.0);
    inst.params.cost = rng::uniform_in(gen, 0.5, 2.0);
    for (int k = 0; k < m; ++k) {
      inst.params.alpha.push_back(rng::uniform_in(gen, 5.0, 15.0));
    }
  }
  return inst;
}

// Nonnegative shock below frac * alpha_k / beta per market.
inline cournot::ShockVector random_feasible_shock(cournot::rng::Engine& gen,
                                                  const cournot::GameParams& params,
                                                  double frac = 0.1) {
  cournot::ShockVector eps(static_cast<Eigen::Index>(params.alpha.size()));
  for (Eigen::Index k = 0; k < eps.size(); ++k) {
    eps[k] = frac * params.alpha[k] / params.beta * cournot::rng::unit_double(gen);
  }
  return eps;
}

// Unique scratch directory, removed on destruction.
struct TempDir {
  std::filesystem::path path;

  explicit TempDir(const std::string& tag) {
    static std::uint64_t counter = 0;
    path = std::filesystem::temp_directory_path() /
           (tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path file(const std::string& name) const { return path / name; }
};

inline std::filesystem::path write_file(const std::filesystem::path& path,
                                        const std::string& content) {
  std::ofstream out(path);
  out << content;
  return path;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace fixtures
