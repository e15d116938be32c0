#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>

#include "cournot/equilibrium.hpp"

namespace cournot {

/// Which per-market ranking coefficient the Linear strategy uses:
///  - paper:    the published closed-form expression, reproduced verbatim
///              (requires a uniform alpha; its interaction term and a
///              -beta*Q_r term differ from the true gradient)
///  - gradient: the exact gradient of the selected welfare variant at eps = 0
enum class ZetaMode { paper, gradient };

ZetaMode zeta_mode_from_string(const std::string& name);
std::string to_string(ZetaMode mode);

struct SensitivityReport {
  Eigen::MatrixXd jacobian;  // |E| x n_markets, d q*/d eps at eps = 0
  std::optional<Eigen::VectorXd> zeta_paper;  // absent when alpha varies
  Eigen::VectorXd zeta_gradient;
  WelfareVariant variant = WelfareVariant::with_government;
};

/// d q*/d eps at eps = 0; column r is -gamma beta Lambda e_r. Since q*(eps)
/// is affine, q*(eps) = q*(0) + J eps exactly.
const Eigen::MatrixXd& jacobian(const CournotGame& game);

/// The verbatim closed-form ranking coefficient, per market. Requires a
/// uniform alpha and throws otherwise.
Eigen::VectorXd zeta_paper(const CournotGame& game);

/// Exact gradient of the selected welfare variant at eps = 0, assembled from
/// the shock Jacobian by the chain rule.
Eigen::VectorXd zeta_gradient(const CournotGame& game, WelfareVariant variant);

/// Central finite differences (f(+h e_r) - f(-h e_r)) / 2h per market.
Eigen::VectorXd finite_difference_gradient(
    const std::function<double(const ShockVector&)>& social_welfare_fn,
    int n_markets, double step);

/// Convenience overload differentiating the equilibrium welfare of `variant`.
/// Checks that 2*step stays below every price-feasibility bound.
Eigen::VectorXd finite_difference_gradient(const CournotGame& game,
                                           WelfareVariant variant,
                                           double step = 1e-4);

SensitivityReport sensitivity_report(const CournotGame& game, WelfareVariant variant);

}  // namespace cournot
