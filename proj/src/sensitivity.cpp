#include "cournot/sensitivity.hpp"

#include <stdexcept>

namespace cournot {

ZetaMode zeta_mode_from_string(const std::string& name) {
  if (name == "paper") return ZetaMode::paper;
  if (name == "gradient") return ZetaMode::gradient;
  throw std::invalid_argument("unknown zeta mode '" + name +
                              "' (expected paper or gradient)");
}

std::string to_string(ZetaMode mode) {
  return mode == ZetaMode::paper ? "paper" : "gradient";
}

const Eigen::MatrixXd& jacobian(const CournotGame& game) {
  return game.shock_jacobian();
}

Eigen::VectorXd zeta_paper(const CournotGame& game) {
  const double alpha = game.params().alpha_scalar();
  const double beta = game.params().beta;
  const double c = game.params().cost;
  const double gamma = game.params().gamma();
  const MarketNetwork& net = game.network();
  const Eigen::MatrixXd& lambda = game.leontief().lambda;
  const int n_edges = net.n_edges();
  const int n_markets = net.n_markets;

  // Row sums S_e = sum_f lambda_ef and per-market column sums
  // incidence(e, r) = sum over edges f into market r of lambda_ef.
  Eigen::VectorXd row_sum = lambda.rowwise().sum();
  Eigen::MatrixXd incidence = Eigen::MatrixXd::Zero(n_edges, n_markets);
  for (int idx = 0; idx < n_edges; ++idx) {
    incidence.col(net.edges[idx].market) += lambda.col(idx);
  }

  // zeta_r = -gamma beta sum_e (alpha - gamma alpha (beta + 2c) S_e) * incidence(e, r)
  //          - sum_e (gamma alpha S_e) * (W * gamma beta incidence)(e, r) + alpha
  Eigen::VectorXd outer = Eigen::VectorXd::Constant(n_edges, alpha) -
                          gamma * alpha * (beta + 2.0 * c) * row_sum;
  Eigen::VectorXd quantities = gamma * alpha * row_sum;
  Eigen::MatrixXd interaction = game.influence().w * (gamma * beta * incidence);

  Eigen::VectorXd zeta = -gamma * beta * (incidence.transpose() * outer) -
                         interaction.transpose() * quantities +
                         Eigen::VectorXd::Constant(n_markets, alpha);
  return zeta;
}

Eigen::VectorXd zeta_gradient(const CournotGame& game, WelfareVariant variant) {
  const GameParams& params = game.params();
  const double beta = params.beta;
  const Eigen::VectorXd& q0 = game.base_quantities();
  const Eigen::MatrixXd& j = game.shock_jacobian();

  // d/d eps_r of sum_e h(q_e) - (1/2) q' W q along the equilibrium map.
  Eigen::VectorXd marginal = game.alpha_per_edge() -
                             (beta + 2.0 * params.cost) * q0 -
                             game.influence().w * q0;
  Eigen::VectorXd zeta = j.transpose() * marginal;

  const Eigen::VectorXd supply = game.market_supply(q0);
  switch (variant) {
    case WelfareVariant::components:
      // The shock terms (beta/2) eps'eps have zero gradient at eps = 0.
      break;
    case WelfareVariant::eq7:
      zeta -= beta * supply;
      break;
    case WelfareVariant::with_government:
      for (int k = 0; k < game.network().n_markets; ++k) {
        zeta[k] += params.alpha[k] - beta * supply[k];
      }
      break;
  }
  return zeta;
}

Eigen::VectorXd finite_difference_gradient(
    const std::function<double(const ShockVector&)>& social_welfare_fn,
    int n_markets, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
  Eigen::VectorXd gradient(n_markets);
  ShockVector eps = ShockVector::Zero(n_markets);
  for (int r = 0; r < n_markets; ++r) {
    eps[r] = step;
    const double up = social_welfare_fn(eps);
    eps[r] = -step;
    const double down = social_welfare_fn(eps);
    eps[r] = 0.0;
    gradient[r] = (up - down) / (2.0 * step);
  }
  return gradient;
}

Eigen::VectorXd finite_difference_gradient(const CournotGame& game,
                                           WelfareVariant variant, double step) {
  const GameParams& params = game.params();
  if (!(2.0 * step < params.min_alpha() / params.beta)) {
    throw std::invalid_argument("step violates the price-feasibility bound alpha/beta");
  }
  return finite_difference_gradient(
      [&](const ShockVector& eps) { return game.welfare_at(eps, variant); },
      game.network().n_markets, step);
}

SensitivityReport sensitivity_report(const CournotGame& game, WelfareVariant variant) {
  SensitivityReport report;
  report.jacobian = game.shock_jacobian();
  if (game.params().uniform_alpha()) {
    report.zeta_paper = zeta_paper(game);
  }
  report.zeta_gradient = zeta_gradient(game, variant);
  report.variant = variant;
  return report;
}

}  // namespace cournot
