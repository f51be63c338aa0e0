#include "tariffnet/pattern.hpp"

#include "tariffnet/errors.hpp"

namespace tariffnet {

TradePattern::TradePattern(std::size_t countries, std::set<Link> links)
    : countries_(countries) {
  for (const Link& l : links) add(l.producer, l.market);
}

void TradePattern::add(std::size_t producer, std::size_t market) {
  if (producer >= countries_ || market >= countries_) {
    throw DomainError("link references a country outside the economy");
  }
  links_.insert({producer, market});
}

std::vector<std::size_t> TradePattern::destinations(std::size_t producer) const {
  std::vector<std::size_t> out;
  for (const Link& l : links_) {
    if (l.producer == producer) out.push_back(l.market);
  }
  return out;
}

std::vector<std::size_t> TradePattern::sources(std::size_t market) const {
  std::vector<std::size_t> out;
  for (const Link& l : links_) {
    if (l.market == market) out.push_back(l.producer);
  }
  return out;
}

TradePattern pattern_from_flows(const FlowMatrix& flows, double tolerance) {
  if (!flows.square()) throw DomainError("flow matrix must be square");
  TradePattern pattern(flows.rows());
  for (std::size_t i = 0; i < flows.rows(); ++i) {
    for (std::size_t j = 0; j < flows.cols(); ++j) {
      if (flows(i, j) > tolerance) pattern.add(j, i);
    }
  }
  return pattern;
}

}  // namespace tariffnet
