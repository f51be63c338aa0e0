#include "tariffnet/netstruct.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "tariffnet/errors.hpp"

namespace tariffnet {

TradeGraph TradeGraph::from_flows(const FlowMatrix& flows, double tolerance) {
  if (!flows.square()) throw DomainError("flow matrix must be square");
  TradeGraph g(flows.rows());
  for (std::size_t i = 0; i < flows.rows(); ++i) {
    for (std::size_t j = 0; j < flows.cols(); ++j) {
      if (i != j && flows(i, j) > tolerance) g.add_edge(j, i);
    }
  }
  return g;
}

TradeGraph TradeGraph::from_pattern(const TradePattern& pattern) {
  TradeGraph g(pattern.countries());
  for (const Link& l : pattern.links()) g.add_edge(l.producer, l.market);
  return g;
}

void TradeGraph::add_edge(std::size_t from, std::size_t to) {
  if (from >= size() || to >= size()) throw DomainError("edge references an unknown node");
  if (from == to || has_edge(from, to)) return;
  out_[from].push_back(to);
  std::sort(out_[from].begin(), out_[from].end());
}

bool TradeGraph::has_edge(std::size_t from, std::size_t to) const {
  return std::binary_search(out_[from].begin(), out_[from].end(), to);
}

DagCheck find_cycle(const TradeGraph& graph) {
  enum class Mark { fresh, active, done };
  const std::size_t n = graph.size();
  std::vector<Mark> mark(n, Mark::fresh);
  std::vector<std::size_t> stack;

  // Iterative DFS; `stack` holds the current path.
  for (std::size_t root = 0; root < n; ++root) {
    if (mark[root] != Mark::fresh) continue;
    std::vector<std::pair<std::size_t, std::size_t>> frames{{root, 0}};
    mark[root] = Mark::active;
    stack = {root};
    while (!frames.empty()) {
      auto& [v, next] = frames.back();
      const auto& succ = graph.successors(v);
      if (next == succ.size()) {
        mark[v] = Mark::done;
        frames.pop_back();
        stack.pop_back();
        continue;
      }
      const std::size_t w = succ[next++];
      if (mark[w] == Mark::active) {
        DagCheck out;
        out.acyclic = false;
        auto from = std::find(stack.begin(), stack.end(), w);
        out.cycle.assign(from, stack.end());
        out.cycle.push_back(w);
        return out;
      }
      if (mark[w] == Mark::fresh) {
        mark[w] = Mark::active;
        stack.push_back(w);
        frames.push_back({w, 0});
      }
    }
  }
  return {};
}

DagCheck is_dag(const FlowMatrix& flows, double tolerance) {
  return find_cycle(TradeGraph::from_flows(flows, tolerance));
}

namespace {

std::string describe_cycle(const std::vector<std::size_t>& cycle) {
  std::string text = "trade graph has a directed cycle:";
  for (std::size_t v : cycle) text += " " + std::to_string(v);
  return text;
}

}  // namespace

CycleError::CycleError(std::vector<std::size_t> c)
    : std::runtime_error(describe_cycle(c)), cycle(std::move(c)) {}

std::vector<std::size_t> topological_order(const TradeGraph& graph) {
  const std::size_t n = graph.size();
  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w : graph.successors(v)) ++indegree[w];
  }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push(v);
  }
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    const std::size_t v = ready.top();
    ready.pop();
    order.push_back(v);
    for (std::size_t w : graph.successors(v)) {
      if (--indegree[w] == 0) ready.push(w);
    }
  }
  if (order.size() != n) throw CycleError(find_cycle(graph).cycle);
  return order;
}

PatternDiff pattern_diff(const TradePattern& a, const TradePattern& b) {
  if (a.countries() != b.countries()) {
    throw DomainError("patterns cover different country sets");
  }
  PatternDiff diff;
  std::set_difference(b.links().begin(), b.links().end(), a.links().begin(),
                      a.links().end(), std::back_inserter(diff.added));
  std::set_difference(a.links().begin(), a.links().end(), b.links().begin(),
                      b.links().end(), std::back_inserter(diff.removed));
  return diff;
}

}  // namespace tariffnet
