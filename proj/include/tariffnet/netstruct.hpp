#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tariffnet/matrix.hpp"
#include "tariffnet/pattern.hpp"

namespace tariffnet {

/// Cross-border trade network: an edge j -> i for every q(i, j) above the
/// tolerance with i != j. Domestic sales are not edges.
class TradeGraph {
 public:
  explicit TradeGraph(std::size_t nodes = 0) : out_(nodes) {}
  static TradeGraph from_flows(const FlowMatrix& flows, double tolerance);
  static TradeGraph from_pattern(const TradePattern& pattern);

  std::size_t size() const { return out_.size(); }
  /// Self-edges are ignored.
  void add_edge(std::size_t from, std::size_t to);
  bool has_edge(std::size_t from, std::size_t to) const;
  const std::vector<std::size_t>& successors(std::size_t node) const { return out_[node]; }

 private:
  std::vector<std::vector<std::size_t>> out_;
};

struct DagCheck {
  bool acyclic = true;
  /// Closed walk c0 -> c1 -> ... -> c0 (first node repeated at the end).
  std::vector<std::size_t> cycle;
};

/// Throws DomainError on a non-square matrix.
DagCheck is_dag(const FlowMatrix& flows, double tolerance = 1e-9);
DagCheck find_cycle(const TradeGraph& graph);

class CycleError : public std::runtime_error {
 public:
  explicit CycleError(std::vector<std::size_t> cycle);
  std::vector<std::size_t> cycle;
};

/// Kahn's algorithm taking the lowest-index available node first. Throws
/// CycleError with a witness when the graph is cyclic.
std::vector<std::size_t> topological_order(const TradeGraph& graph);

struct PatternDiff {
  std::vector<Link> added;    // in b, not in a
  std::vector<Link> removed;  // in a, not in b
};

/// Throws DomainError when the patterns cover different country counts.
PatternDiff pattern_diff(const TradePattern& a, const TradePattern& b);

}  // namespace tariffnet
