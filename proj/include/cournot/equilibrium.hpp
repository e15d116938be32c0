#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <map>
#include <string>
#include <vector>

#include "cournot/network.hpp"
#include "cournot/params.hpp"

namespace cournot {

/// Per-market government supply, length n_markets.
using ShockVector = Eigen::VectorXd;

/// The three social-welfare formulas exposed by the toolkit. They coincide at
/// zero shock and differ in how the shock terms enter:
///  - eq7:             single vectorized quadratic form with -beta*eps'Q and
///                     -(beta/2)*eps'eps shock terms
///  - components:      total firm profit plus consumer surplus, evaluated
///                     from prices
///  - with_government: per-unit surplus h(x) = alpha*x - (beta/2 + c)*x^2
///                     applied to firm and government quantities alike,
///                     minus the pairwise-interaction term
enum class WelfareVariant { eq7, components, with_government };

WelfareVariant welfare_variant_from_string(const std::string& name);
std::string to_string(WelfareVariant variant);
inline constexpr WelfareVariant kAllVariants[] = {
    WelfareVariant::eq7, WelfareVariant::components, WelfareVariant::with_government};

/// Strategic-coupling matrix over edge pairs: 2c when the edges share the
/// firm, beta when they share the market, zero otherwise. Symmetric with a
/// zero diagonal; rows/columns use the canonical edge order.
struct InfluenceMatrix {
  Eigen::SparseMatrix<double> w;  // |E| x |E|
};

InfluenceMatrix build_influence_matrix(const MarketNetwork& net, const GameParams& params);

/// Dense inverse of (I + gamma W).
struct LeontiefInverse {
  Eigen::MatrixXd lambda;
  double residual_norm = 0.0;  // max-norm of (I + gamma W) * lambda - I
};

/// Inverts I + gamma W and verifies the residual; throws (with the residual
/// in the message) when the system is singular or too ill-conditioned for
/// the max-norm residual to stay below 1e-8 * |E|.
LeontiefInverse leontief_inverse(const InfluenceMatrix& influence, double gamma);

struct EquilibriumOutcome {
  Eigen::VectorXd q_star;         // per-edge equilibrium quantities
  Eigen::VectorXd market_supply;  // Q_k = sum of q* over firms in market k
  Eigen::VectorXd prices;         // P_k = alpha_k - beta (Q_k + eps_k)
  Eigen::VectorXd firm_profits;
  double consumer_surplus = 0.0;
  std::map<WelfareVariant, double> welfare;
  // Edges with q* < 0: the closed form is returned unchanged, but the
  // interior-equilibrium assumption behind it does not hold there.
  std::vector<int> negative_edges;

  bool interior() const { return negative_edges.empty(); }
};

/// Shared solve context. Construction builds the influence matrix, the
/// Leontief inverse (with residual check), the zero-shock equilibrium and
/// the shock-response matrix; queries afterwards are cheap and const.
class CournotGame {
 public:
  CournotGame(MarketNetwork net, GameParams params);

  const MarketNetwork& network() const { return net_; }
  const GameParams& params() const { return params_; }
  const InfluenceMatrix& influence() const { return influence_; }
  const LeontiefInverse& leontief() const { return leontief_; }

  /// alpha_k of each edge's market, in edge order.
  const Eigen::VectorXd& alpha_per_edge() const { return alpha_per_edge_; }
  /// Equilibrium quantities at eps = 0.
  const Eigen::VectorXd& base_quantities() const { return base_quantities_; }
  /// d q*/d eps, |E| x n_markets. Column r equals -gamma beta Lambda e_r with
  /// e_r the indicator of edges into market r; q*(eps) is affine in eps.
  const Eigen::MatrixXd& shock_jacobian() const { return shock_jacobian_; }

  /// Closed-form equilibrium quantities under shocks. Requires
  /// eps_k < alpha_k / beta (price nonnegativity) and verifies the linear
  /// system residual on every solve.
  Eigen::VectorXd equilibrium(const ShockVector& eps) const;

  /// Full evaluation at the equilibrium: prices, profits, consumer surplus
  /// and all welfare variants.
  EquilibriumOutcome outcome(const ShockVector& eps) const;

  /// Welfare of a given per-edge quantity vector under shocks eps.
  double social_welfare(const Eigen::VectorXd& q, const ShockVector& eps,
                        WelfareVariant variant) const;

  /// Solve-and-evaluate shortcut: social welfare at the equilibrium for eps.
  double welfare_at(const ShockVector& eps, WelfareVariant variant) const;

  Eigen::VectorXd market_supply(const Eigen::VectorXd& q) const;

 private:
  MarketNetwork net_;
  GameParams params_;
  InfluenceMatrix influence_;
  LeontiefInverse leontief_;
  Eigen::VectorXd alpha_per_edge_;
  Eigen::VectorXd base_quantities_;
  Eigen::MatrixXd shock_jacobian_;
};

/// One-shot wrappers; each builds the full context.
Eigen::VectorXd equilibrium(const MarketNetwork& net, const GameParams& params,
                            const ShockVector& eps);
EquilibriumOutcome outcome(const MarketNetwork& net, const GameParams& params,
                           const ShockVector& eps);

/// Fixed point of projected best responses,
///   q_ik <- max(0, gamma (alpha_k - beta eps_k - 2c sum_{l != k} q_il
///                         - beta sum_{j != i} q_jk)),
/// applied edge-by-edge in canonical order until the largest per-sweep change
/// drops below `tol`. Independent of the closed-form path; used as an oracle
/// against it. Throws (with the last change in the message) when `max_sweeps`
/// is exhausted.
Eigen::VectorXd best_response_oracle(const MarketNetwork& net, const GameParams& params,
                                     const ShockVector& eps, double tol = 1e-10,
                                     int max_sweeps = 100000);

}  // namespace cournot
