#pragma once

#include <Eigen/Dense>
#include <string>

#include "cournot/network.hpp"

namespace cournot {

enum class CentralityMeasure { degree, betweenness, closeness };

std::string to_string(CentralityMeasure measure);

/// Per-market scores; values are nonnegative and indexed in market order.
struct CentralityScores {
  CentralityMeasure measure = CentralityMeasure::degree;
  Eigen::VectorXd values;
};

/// d(m_j) = number of firms competing in market j.
CentralityScores degree(const MarketNetwork& net);

/// Fraction of firm-pair shortest paths through each market, summed over
/// unordered firm pairs (endpoints excluded, unit edge lengths, pairs in
/// different components contribute zero, no normalization).
CentralityScores betweenness(const MarketNetwork& net);

/// Harmonic closeness: cl(m_j) = sum over firms of 1 / dist(m_j, f);
/// unreachable firms contribute zero.
CentralityScores closeness(const MarketNetwork& net);

}  // namespace cournot
