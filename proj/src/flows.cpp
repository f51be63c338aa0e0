#include "tariffnet/flows.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <numeric>

#include "tariffnet/errors.hpp"

namespace tariffnet {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Bipartite transportation network: source -> producer (cap = supply),
// producer -> market on support links (uncapacitated), market -> sink
// (cap = demand). Solved by successive shortest paths with Bellman-Ford, so
// negative link costs are fine as long as the initial graph is acyclic.
class TransportNetwork {
 public:
  using LinkCost = std::function<double(const Link&)>;

  TransportNetwork(std::span<const double> supplies, std::span<const double> demands,
                   const TradePattern& support, const LinkCost& cost)
      : n_(supplies.size()), adjacency_(2 * n_ + 2) {
    double total = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
      add_edge(source(), producer(j), supplies[j], 0.0);
      total += supplies[j];
    }
    eps_ = 1e-13 * std::max(1.0, total);
    for (const Link& l : support.links()) {
      link_edges_.push_back(
          {l, add_edge(producer(l.producer), market(l.market), kInf, cost(l))});
    }
    for (std::size_t i = 0; i < n_; ++i) add_edge(market(i), sink(), demands[i], 0.0);
  }

  double solve() {
    double pushed = 0.0;
    const std::size_t nodes = adjacency_.size();
    std::vector<double> dist(nodes);
    std::vector<int> via(nodes);
    for (;;) {
      std::fill(dist.begin(), dist.end(), kInf);
      std::fill(via.begin(), via.end(), -1);
      dist[source()] = 0.0;
      // Bellman-Ford; costs are small integers or bounded reals.
      for (std::size_t round = 0; round < nodes; ++round) {
        bool changed = false;
        for (std::size_t e = 0; e < edges_.size(); ++e) {
          const Edge& edge = edges_[e];
          if (edge.residual() <= eps_ || dist[edge.from] == kInf) continue;
          const double cand = dist[edge.from] + edge.cost;
          if (cand < dist[edge.to] - 1e-12) {
            dist[edge.to] = cand;
            via[edge.to] = static_cast<int>(e);
            changed = true;
          }
        }
        if (!changed) break;
      }
      if (via[sink()] < 0) break;

      double bottleneck = kInf;
      for (std::size_t v = sink(); v != source();) {
        const Edge& edge = edges_[static_cast<std::size_t>(via[v])];
        bottleneck = std::min(bottleneck, edge.residual());
        v = edge.from;
      }
      for (std::size_t v = sink(); v != source();) {
        const auto e = static_cast<std::size_t>(via[v]);
        edges_[e].flow += bottleneck;
        edges_[e ^ 1].flow -= bottleneck;
        v = edges_[e].from;
      }
      pushed += bottleneck;
    }
    return pushed;
  }

  FlowMatrix flows() const {
    FlowMatrix q(n_, n_, 0.0);
    for (const auto& [link, e] : link_edges_) {
      q(link.market, link.producer) = std::max(0.0, edges_[e].flow);
    }
    return q;
  }

  /// Producers still reachable from the source in the residual graph.
  std::vector<std::size_t> source_side_producers() const {
    std::vector<bool> seen(adjacency_.size(), false);
    std::deque<std::size_t> queue{source()};
    seen[source()] = true;
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t e : adjacency_[v]) {
        const Edge& edge = edges_[e];
        if (edge.residual() > eps_ && !seen[edge.to]) {
          seen[edge.to] = true;
          queue.push_back(edge.to);
        }
      }
    }
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < n_; ++j) {
      if (seen[producer(j)]) out.push_back(j);
    }
    return out;
  }

  /// Shortest-path potentials over the residual graph from a virtual root;
  /// reduced costs against them are nonnegative at an optimum.
  std::vector<double> potentials() const {
    std::vector<double> pi(adjacency_.size(), 0.0);
    for (std::size_t round = 0; round < adjacency_.size(); ++round) {
      bool changed = false;
      for (const Edge& edge : edges_) {
        if (edge.residual() <= eps_) continue;
        if (pi[edge.from] + edge.cost < pi[edge.to] - 1e-12) {
          pi[edge.to] = pi[edge.from] + edge.cost;
          changed = true;
        }
      }
      if (!changed) break;
    }
    return pi;
  }

  std::size_t producer(std::size_t j) const { return 1 + j; }
  std::size_t market(std::size_t i) const { return 1 + n_ + i; }

 private:
  struct Edge {
    std::size_t from;
    std::size_t to;
    double capacity;
    double cost;
    double flow = 0.0;

    double residual() const { return capacity - flow; }
  };

  std::size_t source() const { return 0; }
  std::size_t sink() const { return 2 * n_ + 1; }

  std::size_t add_edge(std::size_t from, std::size_t to, double capacity, double cost) {
    const std::size_t id = edges_.size();
    edges_.push_back({from, to, capacity, cost});
    edges_.push_back({to, from, 0.0, -cost});
    adjacency_[from].push_back(id);
    adjacency_[to].push_back(id + 1);
    return id;
  }

  std::size_t n_;
  double eps_ = 1e-13;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<std::pair<Link, std::size_t>> link_edges_;
};

void check_margins(std::span<const double> supplies, std::span<const double> demands,
                   const TradePattern& support) {
  if (supplies.size() != demands.size()) {
    throw DomainError("supply and demand vectors differ in length");
  }
  if (support.countries() != supplies.size()) {
    throw DomainError("support pattern does not match the margin dimension");
  }
  for (double v : supplies) {
    if (!(v >= 0.0)) throw DomainError("supplies must be nonnegative");
  }
  for (double v : demands) {
    if (!(v >= 0.0)) throw DomainError("demands must be nonnegative");
  }
}

double sum(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0); }

bool within(double a, double b, double tolerance) {
  return std::abs(a - b) <= tolerance * (1.0 + std::max(std::abs(a), std::abs(b)));
}

std::optional<FlowCertificate> imbalance(std::span<const double> supplies,
                                         std::span<const double> demands,
                                         double tolerance) {
  const double s = sum(supplies);
  const double d = sum(demands);
  if (within(s, d, tolerance)) return std::nullopt;
  FlowCertificate cert;
  cert.kind = FlowCertificate::Kind::global_imbalance;
  cert.excess = s - d;
  return cert;
}

FlowCertificate hall_certificate(const TransportNetwork& net,
                                 std::span<const double> supplies,
                                 std::span<const double> demands,
                                 const TradePattern& support) {
  FlowCertificate cert;
  cert.kind = FlowCertificate::Kind::hall_violation;
  cert.producers = net.source_side_producers();
  std::vector<bool> neighbor(demands.size(), false);
  double excess = 0.0;
  for (std::size_t j : cert.producers) {
    excess += supplies[j];
    for (std::size_t i : support.destinations(j)) neighbor[i] = true;
  }
  for (std::size_t i = 0; i < demands.size(); ++i) {
    if (neighbor[i]) excess -= demands[i];
  }
  cert.excess = excess;
  return cert;
}

std::string describe(const FlowCertificate& cert) {
  if (cert.kind == FlowCertificate::Kind::global_imbalance) {
    return "global imbalance: total supply minus total demand = " +
           std::to_string(cert.excess);
  }
  std::string who;
  for (std::size_t j : cert.producers) who += (who.empty() ? "" : ",") + std::to_string(j);
  return "producers {" + who + "} supply exceeds their reachable demand by " +
         std::to_string(cert.excess);
}

}  // namespace

FlowFeasibility feasible_flows(std::span<const double> supplies,
                               std::span<const double> demands,
                               const TradePattern& support, double tolerance) {
  check_margins(supplies, demands, support);
  FlowFeasibility result;
  if (auto cert = imbalance(supplies, demands, tolerance)) {
    result.certificate = *cert;
    return result;
  }
  TransportNetwork net(supplies, demands, support, [](const Link&) { return 0.0; });
  const double pushed = net.solve();
  if (!within(pushed, sum(supplies), tolerance)) {
    result.certificate = hall_certificate(net, supplies, demands, support);
    return result;
  }
  result.flows = net.flows();
  return result;
}

FlowMatrix max_flow_allocation(std::span<const double> supplies,
                               std::span<const double> demands,
                               const TradePattern& support) {
  check_margins(supplies, demands, support);
  TransportNetwork net(supplies, demands, support, [](const Link&) { return 0.0; });
  net.solve();
  return net.flows();
}

FlowMatrix canonical_flows(std::span<const double> supplies,
                           std::span<const double> demands,
                           const TradePattern& support, double tolerance) {
  check_margins(supplies, demands, support);
  if (auto cert = imbalance(supplies, demands, tolerance)) {
    throw InfeasibleFlows(describe(*cert), {});
  }

  // Phase 1: least cross-border volume.
  TransportNetwork exports(supplies, demands, support, [](const Link& l) {
    return l.producer == l.market ? 0.0 : 1.0;
  });
  const double pushed = exports.solve();
  if (!within(pushed, sum(supplies), tolerance)) {
    const auto cert = hall_certificate(exports, supplies, demands, support);
    throw InfeasibleFlows(describe(cert), cert.producers);
  }

  // Phase 2: among phase-1 optima (links with zero reduced cost), prefer the
  // lexicographically smallest (market, producer) entries.
  const auto pi = exports.potentials();
  TradePattern optimal_face(support.countries());
  for (const Link& l : support.links()) {
    const double cost = l.producer == l.market ? 0.0 : 1.0;
    const double reduced =
        cost + pi[exports.producer(l.producer)] - pi[exports.market(l.market)];
    if (reduced < 0.5) optimal_face.add(l.producer, l.market);
  }
  const double n = static_cast<double>(supplies.size());
  TransportNetwork lex(supplies, demands, optimal_face, [n](const Link& l) {
    return static_cast<double>(l.market) * n + static_cast<double>(l.producer);
  });
  const double lex_pushed = lex.solve();
  if (!within(lex_pushed, sum(supplies), tolerance)) return exports.flows();
  return lex.flows();
}

bool has_multiple_flows(const FlowMatrix& flows, const TradePattern& support,
                        double tolerance) {
  // A basic solution is unique iff its positive links form a forest and no
  // other support link joins two nodes of the same tree (otherwise flow can
  // be pushed around the closed alternating cycle).
  const std::size_t n = flows.rows();
  std::vector<std::size_t> parent(2 * n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };

  std::vector<Link> idle;
  for (const Link& l : support.links()) {
    if (flows(l.market, l.producer) > tolerance) {
      const std::size_t a = find(l.producer);
      const std::size_t b = find(n + l.market);
      if (a == b) return true;
      parent[a] = b;
    } else {
      idle.push_back(l);
    }
  }
  for (const Link& l : idle) {
    if (find(l.producer) == find(n + l.market)) return true;
  }
  return false;
}

ObjectiveRange flow_objective_range(std::span<const double> supplies,
                                    std::span<const double> demands,
                                    const TradePattern& support,
                                    const Matrix<double>& weights, double tolerance) {
  check_margins(supplies, demands, support);
  auto evaluate = [&](double sign) {
    TransportNetwork net(supplies, demands, support, [&](const Link& l) {
      return sign * weights(l.market, l.producer);
    });
    const double pushed = net.solve();
    if (!within(pushed, sum(supplies), tolerance)) {
      const auto cert = hall_certificate(net, supplies, demands, support);
      throw InfeasibleFlows(describe(cert), cert.producers);
    }
    const FlowMatrix q = net.flows();
    double value = 0.0;
    for (const Link& l : support.links()) {
      value += weights(l.market, l.producer) * q(l.market, l.producer);
    }
    return value;
  };
  return {evaluate(1.0), evaluate(-1.0)};
}

}  // namespace tariffnet
