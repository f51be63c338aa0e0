#pragma once

#include <compare>
#include <cstddef>
#include <set>
#include <vector>

#include "tariffnet/matrix.hpp"

namespace tariffnet {

/// Directed trade link: goods produced in `producer` sold in `market`.
struct Link {
  std::size_t producer = 0;
  std::size_t market = 0;

  auto operator<=>(const Link&) const = default;
};

/// Set of active producer -> market links (the equilibrium network).
class TradePattern {
 public:
  TradePattern() = default;
  TradePattern(std::size_t countries, std::set<Link> links = {});

  std::size_t countries() const { return countries_; }
  const std::set<Link>& links() const { return links_; }
  /// Number of active links.
  std::size_t m() const { return links_.size(); }
  bool empty() const { return links_.empty(); }

  bool contains(std::size_t producer, std::size_t market) const {
    return links_.contains({producer, market});
  }
  void add(std::size_t producer, std::size_t market);

  std::vector<std::size_t> destinations(std::size_t producer) const;
  std::vector<std::size_t> sources(std::size_t market) const;

  bool operator==(const TradePattern&) const = default;

 private:
  std::size_t countries_ = 0;
  std::set<Link> links_;
};

/// Links carrying flow strictly above `tolerance`.
TradePattern pattern_from_flows(const FlowMatrix& flows, double tolerance);

}  // namespace tariffnet
