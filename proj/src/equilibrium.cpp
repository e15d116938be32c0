#include "cournot/equilibrium.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cournot {

WelfareVariant welfare_variant_from_string(const std::string& name) {
  if (name == "eq7") return WelfareVariant::eq7;
  if (name == "components") return WelfareVariant::components;
  if (name == "with_government") return WelfareVariant::with_government;
  throw std::invalid_argument("unknown welfare variant '" + name +
                              "' (expected eq7, components or with_government)");
}

std::string to_string(WelfareVariant variant) {
  switch (variant) {
    case WelfareVariant::eq7: return "eq7";
    case WelfareVariant::components: return "components";
    case WelfareVariant::with_government: return "with_government";
  }
  throw std::invalid_argument("unknown welfare variant");
}

InfluenceMatrix build_influence_matrix(const MarketNetwork& net, const GameParams& params) {
  params.validate(net);
  const int e = net.n_edges();
  std::vector<Eigen::Triplet<double>> entries;
  // Same firm, different market: 2c. Same market, different firm: beta.
  for (int i = 0; i < net.n_firms; ++i) {
    const auto& markets = net.firm_markets[i];
    for (std::size_t a = 0; a < markets.size(); ++a) {
      for (std::size_t b = 0; b < markets.size(); ++b) {
        if (a == b) continue;
        entries.emplace_back(net.edge_of(i, markets[a]), net.edge_of(i, markets[b]),
                             2.0 * params.cost);
      }
    }
  }
  for (int k = 0; k < net.n_markets; ++k) {
    const auto& firms = net.market_firms[k];
    for (std::size_t a = 0; a < firms.size(); ++a) {
      for (std::size_t b = 0; b < firms.size(); ++b) {
        if (a == b) continue;
        entries.emplace_back(net.edge_of(firms[a], k), net.edge_of(firms[b], k),
                             params.beta);
      }
    }
  }
  InfluenceMatrix influence;
  influence.w.resize(e, e);
  influence.w.setFromTriplets(entries.begin(), entries.end());
  return influence;
}

LeontiefInverse leontief_inverse(const InfluenceMatrix& influence, double gamma) {
  const Eigen::Index e = influence.w.rows();
  Eigen::MatrixXd system = gamma * Eigen::MatrixXd(influence.w);
  system.diagonal().array() += 1.0;

  LeontiefInverse result;
  result.lambda = system.partialPivLu().inverse();

  // (I + gamma W) Lambda - I, with the product taken against the sparse W.
  Eigen::MatrixXd residual = gamma * (influence.w * result.lambda);
  residual += result.lambda;
  residual.diagonal().array() -= 1.0;
  result.residual_norm = residual.cwiseAbs().maxCoeff();
  if (!std::isfinite(result.residual_norm) ||
      result.residual_norm > 1e-8 * static_cast<double>(e)) {
    std::ostringstream msg;
    msg << "I + gamma W is singular or too ill-conditioned: inverse residual "
        << result.residual_norm << " exceeds " << 1e-8 * static_cast<double>(e);
    throw std::runtime_error(msg.str());
  }
  return result;
}

CournotGame::CournotGame(MarketNetwork net, GameParams params)
    : net_(std::move(net)), params_(std::move(params)) {
  params_.validate(net_);
  influence_ = build_influence_matrix(net_, params_);
  leontief_ = leontief_inverse(influence_, params_.gamma());

  const int e = net_.n_edges();
  alpha_per_edge_.resize(e);
  for (int idx = 0; idx < e; ++idx) {
    alpha_per_edge_[idx] = params_.alpha[net_.edges[idx].market];
  }
  base_quantities_ = params_.gamma() * (leontief_.lambda * alpha_per_edge_);

  shock_jacobian_ = Eigen::MatrixXd::Zero(e, net_.n_markets);
  for (int idx = 0; idx < e; ++idx) {
    shock_jacobian_.col(net_.edges[idx].market) += leontief_.lambda.col(idx);
  }
  shock_jacobian_ *= -params_.gamma() * params_.beta;
}

Eigen::VectorXd CournotGame::market_supply(const Eigen::VectorXd& q) const {
  Eigen::VectorXd supply = Eigen::VectorXd::Zero(net_.n_markets);
  for (int idx = 0; idx < net_.n_edges(); ++idx) {
    supply[net_.edges[idx].market] += q[idx];
  }
  return supply;
}

Eigen::VectorXd CournotGame::equilibrium(const ShockVector& eps) const {
  if (eps.size() != net_.n_markets) {
    throw std::invalid_argument("shock vector has " + std::to_string(eps.size()) +
                                " entries for " + std::to_string(net_.n_markets) +
                                " markets");
  }
  for (int k = 0; k < net_.n_markets; ++k) {
    if (!(eps[k] < params_.alpha[k] / params_.beta)) {
      throw std::invalid_argument("shock for market " + net_.market_ids[k] +
                                  " reaches alpha/beta; the price would go negative");
    }
  }

  Eigen::VectorXd q = base_quantities_ + shock_jacobian_ * eps;

  // Defining system: (I + gamma W) q = gamma (alpha - beta eps), per edge.
  const double gamma = params_.gamma();
  Eigen::VectorXd rhs(net_.n_edges());
  for (int idx = 0; idx < net_.n_edges(); ++idx) {
    rhs[idx] = gamma * (alpha_per_edge_[idx] - params_.beta * eps[net_.edges[idx].market]);
  }
  Eigen::VectorXd residual = q + gamma * (influence_.w * q) - rhs;
  const double tolerance = 1e-9 * params_.max_alpha();
  const double norm = residual.cwiseAbs().maxCoeff();
  if (!std::isfinite(norm) || norm > tolerance) {
    std::ostringstream msg;
    msg << "equilibrium solve failed: residual " << norm << " exceeds " << tolerance;
    throw std::runtime_error(msg.str());
  }
  return q;
}

double CournotGame::social_welfare(const Eigen::VectorXd& q, const ShockVector& eps,
                                   WelfareVariant variant) const {
  if (q.size() != net_.n_edges() || eps.size() != net_.n_markets) {
    throw std::invalid_argument("vector sizes do not match the network");
  }
  const double beta = params_.beta;
  const double c = params_.cost;
  const Eigen::VectorXd supply = market_supply(q);

  switch (variant) {
    case WelfareVariant::eq7: {
      const double quad = q.dot(q);
      const double interaction = q.dot(influence_.w * q);
      double shock_cross = 0.0, shock_sq = 0.0;
      for (int k = 0; k < net_.n_markets; ++k) {
        shock_cross += eps[k] * supply[k];
        shock_sq += eps[k] * eps[k];
      }
      return q.dot(alpha_per_edge_) - (beta / 2.0 + c) * quad - 0.5 * interaction -
             beta * shock_cross - (beta / 2.0) * shock_sq;
    }
    case WelfareVariant::components: {
      // Sum of firm profits plus consumer surplus, from prices.
      Eigen::VectorXd price(net_.n_markets);
      for (int k = 0; k < net_.n_markets; ++k) {
        price[k] = params_.alpha[k] - beta * (supply[k] + eps[k]);
      }
      double total = 0.0;
      for (int i = 0; i < net_.n_firms; ++i) {
        double revenue = 0.0, produced = 0.0;
        for (int k : net_.firm_markets[i]) {
          const double quantity = q[net_.edge_of(i, k)];
          revenue += quantity * price[k];
          produced += quantity;
        }
        total += revenue - c * produced * produced;
      }
      for (int k = 0; k < net_.n_markets; ++k) {
        const double gap = params_.alpha[k] - price[k];
        total += gap * gap / (2.0 * beta);
      }
      return total;
    }
    case WelfareVariant::with_government: {
      // h(x) = alpha x - (beta/2 + c) x^2 on firm and government quantities,
      // minus the pairwise interaction and the shock-supply cross term.
      const double coef = beta / 2.0 + c;
      double total = q.dot(alpha_per_edge_) - coef * q.dot(q);
      for (int k = 0; k < net_.n_markets; ++k) {
        total += params_.alpha[k] * eps[k] - coef * eps[k] * eps[k];
        total -= beta * eps[k] * supply[k];
      }
      total -= 0.5 * q.dot(influence_.w * q);
      return total;
    }
  }
  throw std::invalid_argument("unknown welfare variant");
}

double CournotGame::welfare_at(const ShockVector& eps, WelfareVariant variant) const {
  return social_welfare(equilibrium(eps), eps, variant);
}

EquilibriumOutcome CournotGame::outcome(const ShockVector& eps) const {
  EquilibriumOutcome out;
  out.q_star = equilibrium(eps);
  out.market_supply = market_supply(out.q_star);

  out.prices.resize(net_.n_markets);
  for (int k = 0; k < net_.n_markets; ++k) {
    out.prices[k] = params_.alpha[k] - params_.beta * (out.market_supply[k] + eps[k]);
  }

  out.firm_profits.resize(net_.n_firms);
  for (int i = 0; i < net_.n_firms; ++i) {
    double revenue = 0.0, produced = 0.0;
    for (int k : net_.firm_markets[i]) {
      const double quantity = out.q_star[net_.edge_of(i, k)];
      revenue += quantity * out.prices[k];
      produced += quantity;
    }
    out.firm_profits[i] = revenue - params_.cost * produced * produced;
  }

  out.consumer_surplus = 0.0;
  for (int k = 0; k < net_.n_markets; ++k) {
    const double gap = params_.alpha[k] - out.prices[k];
    out.consumer_surplus += gap * gap / (2.0 * params_.beta);
  }

  for (WelfareVariant variant : kAllVariants) {
    out.welfare[variant] = social_welfare(out.q_star, eps, variant);
  }
  for (int idx = 0; idx < net_.n_edges(); ++idx) {
    if (out.q_star[idx] < 0.0) out.negative_edges.push_back(idx);
  }
  return out;
}

Eigen::VectorXd equilibrium(const MarketNetwork& net, const GameParams& params,
                            const ShockVector& eps) {
  return CournotGame(net, params).equilibrium(eps);
}

EquilibriumOutcome outcome(const MarketNetwork& net, const GameParams& params,
                           const ShockVector& eps) {
  return CournotGame(net, params).outcome(eps);
}

Eigen::VectorXd best_response_oracle(const MarketNetwork& net, const GameParams& params,
                                     const ShockVector& eps, double tol, int max_sweeps) {
  params.validate(net);
  if (eps.size() != net.n_markets) {
    throw std::invalid_argument("shock vector size mismatch");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");

  const double gamma = params.gamma();
  const double beta = params.beta;
  const double c = params.cost;
  const int n_edges = net.n_edges();

  Eigen::VectorXd q = Eigen::VectorXd::Zero(n_edges);
  std::vector<double> firm_total(net.n_firms, 0.0);
  std::vector<double> market_total(net.n_markets, 0.0);

  double change = 0.0;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    // Refresh the running totals once per sweep to keep rounding drift out.
    std::fill(firm_total.begin(), firm_total.end(), 0.0);
    std::fill(market_total.begin(), market_total.end(), 0.0);
    for (int idx = 0; idx < n_edges; ++idx) {
      firm_total[net.edges[idx].firm] += q[idx];
      market_total[net.edges[idx].market] += q[idx];
    }
    change = 0.0;
    for (int idx = 0; idx < n_edges; ++idx) {
      const auto [i, k] = net.edges[idx];
      const double rivals_here = market_total[k] - q[idx];
      const double own_elsewhere = firm_total[i] - q[idx];
      const double response =
          gamma * (params.alpha[k] - beta * eps[k] - 2.0 * c * own_elsewhere -
                   beta * rivals_here);
      const double next = std::max(0.0, response);
      const double delta = next - q[idx];
      change = std::max(change, std::abs(delta));
      firm_total[i] += delta;
      market_total[k] += delta;
      q[idx] = next;
    }
    if (change < tol) return q;
  }
  std::ostringstream msg;
  msg << "best-response iteration did not converge in " << max_sweeps
      << " sweeps (last change " << change << ", tol " << tol << ")";
  throw std::runtime_error(msg.str());
}

}  // namespace cournot
