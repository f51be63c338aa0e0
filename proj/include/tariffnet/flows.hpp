#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tariffnet/matrix.hpp"
#include "tariffnet/pattern.hpp"

namespace tariffnet {

/// Why given margins admit no flow on a support.
struct FlowCertificate {
  enum class Kind { global_imbalance, hall_violation };
  Kind kind = Kind::global_imbalance;
  /// For hall_violation: producers whose total supply exceeds the demand of
  /// every market they are linked to.
  std::vector<std::size_t> producers;
  /// Supply of `producers` minus demand of their neighborhood (or total
  /// supply minus total demand for a global imbalance).
  double excess = 0.0;
};

struct FlowFeasibility {
  std::optional<FlowMatrix> flows;
  std::optional<FlowCertificate> certificate;

  bool feasible() const { return flows.has_value(); }
};

/// Some q >= 0 with column sums `supplies`, row sums `demands`, supported on
/// `support`, found by max-flow on the bipartite support graph.
FlowFeasibility feasible_flows(std::span<const double> supplies,
                               std::span<const double> demands,
                               const TradePattern& support,
                               double tolerance = 1e-9);

/// A maximum flow that ships as much supply as the support and demands
/// allow, feasible or not.
FlowMatrix max_flow_allocation(std::span<const double> supplies,
                               std::span<const double> demands,
                               const TradePattern& support);

/// The feasible flow with least cross-border volume; remaining ties go to
/// the lexicographically smallest (market, producer) entries. Throws
/// InfeasibleFlows when the margins are infeasible.
FlowMatrix canonical_flows(std::span<const double> supplies,
                           std::span<const double> demands,
                           const TradePattern& support,
                           double tolerance = 1e-9);

/// True when the transportation polytope on `support` with the margins of
/// `flows` contains more than one matrix.
bool has_multiple_flows(const FlowMatrix& flows, const TradePattern& support,
                        double tolerance = 1e-9);

struct ObjectiveRange {
  double min = 0.0;
  double max = 0.0;
};

/// Range of sum_ij weights(i, j) * q(i, j) over all feasible flows.
ObjectiveRange flow_objective_range(std::span<const double> supplies,
                                    std::span<const double> demands,
                                    const TradePattern& support,
                                    const Matrix<double>& weights,
                                    double tolerance = 1e-9);

}  // namespace tariffnet
