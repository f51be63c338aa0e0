#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "tariffnet/equilibrium.hpp"
#include "tariffnet/errors.hpp"
#include "tariffnet/rational.hpp"

namespace tariffnet {
namespace {

constexpr int kMaxSegmentRounds = 200;

template <typename T>
std::size_t locate(const std::vector<LinearPiece<T>>& pieces, const T& q) {
  std::size_t k = 0;
  while (k + 1 < pieces.size() && !(q < pieces[k + 1].start)) ++k;
  return k;
}

template <typename T>
T value_on(const LinearPiece<T>& piece, const T& q) {
  return piece.value + piece.slope * (q - piece.start);
}

template <typename T>
struct PatternSolution {
  std::vector<T> flows;        // one per link, in pattern order
  std::vector<T> consumption;  // per market
  std::vector<T> production;   // per producer
  std::vector<T> consumer_prices;
  std::vector<T> producer_prices;
  int rounds = 0;
};

// Unknowns are the link flows. For link j -> i:
//   d_i(sum_k q[i][k]) - (1 + t[i][j]) * s_j(sum_k q[k][j]) = 0,
// linearized on the current piece of each curve and re-solved until every
// curve's active piece stops changing.
template <typename T, typename Convert>
PatternSolution<T> solve_pattern(const Economy& economy, const std::vector<Link>& links,
                                 Convert convert) {
  const std::size_t n = economy.size();
  const std::size_t m = links.size();
  std::vector<std::vector<LinearPiece<T>>> demand(n), supply(n);
  for (std::size_t k = 0; k < n; ++k) {
    demand[k] = economy.countries[k].demand.pieces<T>(convert);
    supply[k] = economy.countries[k].supply.pieces<T>(convert);
  }
  std::vector<T> markup(m);
  for (std::size_t r = 0; r < m; ++r) {
    markup[r] = T(1) + convert(economy.tariffs.rate(links[r].market, links[r].producer));
  }

  std::vector<std::size_t> market_piece(n, 0), producer_piece(n, 0);
  PatternSolution<T> out;
  for (int round = 1; round <= kMaxSegmentRounds; ++round) {
    Matrix<T> a(m, m, T(0));
    std::vector<T> b(m, T(0));
    for (std::size_t r = 0; r < m; ++r) {
      const Link& row = links[r];
      const auto& dp = demand[row.market][market_piece[row.market]];
      const auto& sp = supply[row.producer][producer_piece[row.producer]];
      for (std::size_t c = 0; c < m; ++c) {
        if (links[c].market == row.market) a(r, c) += dp.slope;
        if (links[c].producer == row.producer) a(r, c) -= markup[r] * sp.slope;
      }
      b[r] = markup[r] * (sp.value - sp.slope * sp.start) - (dp.value - dp.slope * dp.start);
    }
    auto solved = solve_linear<T>(std::move(a), std::move(b));
    if (!solved) {
      throw IndeterminatePattern(
          "indeterminate pattern: the fixed-network system is singular");
    }
    out.flows = std::move(*solved);
    out.consumption.assign(n, T(0));
    out.production.assign(n, T(0));
    for (std::size_t r = 0; r < m; ++r) {
      out.consumption[links[r].market] += out.flows[r];
      out.production[links[r].producer] += out.flows[r];
    }
    bool settled = true;
    for (std::size_t k = 0; k < n; ++k) {
      const auto mp = locate(demand[k], out.consumption[k]);
      const auto pp = locate(supply[k], out.production[k]);
      settled = settled && mp == market_piece[k] && pp == producer_piece[k];
      market_piece[k] = mp;
      producer_piece[k] = pp;
    }
    out.rounds = round;
    if (settled) break;
    if (round == kMaxSegmentRounds) {
      throw IndeterminatePattern("indeterminate pattern: curve pieces did not settle");
    }
  }

  out.consumer_prices.resize(n);
  out.producer_prices.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& dp = demand[k][market_piece[k]];
    const auto& sp = supply[k][producer_piece[k]];
    out.consumer_prices[k] = value_on(dp, out.consumption[k]);
    out.producer_prices[k] = value_on(sp, out.production[k]);
  }
  return out;
}

template <typename T>
double as_double(const T& v) {
  if constexpr (std::is_same_v<T, Rational>) {
    return to_double(v);
  } else {
    return static_cast<double>(v);
  }
}

template <typename T>
Equilibrium to_equilibrium(const Economy& economy, const TradePattern& pattern,
                           const std::vector<Link>& links, const PatternSolution<T>& sol,
                           const SolverOptions& options) {
  const std::size_t n = economy.size();
  Equilibrium eq;
  eq.flows = FlowMatrix(n, n, 0.0);
  for (std::size_t r = 0; r < links.size(); ++r) {
    const double q = as_double(sol.flows[r]);
    if (q < -options.flow_tolerance) {
      const auto& names = economy.countries;
      std::ostringstream msg;
      msg << "infeasible pattern: link " << names[links[r].producer].id << "->"
          << names[links[r].market].id << " solves to negative flow " << q;
      throw InfeasiblePattern(msg.str(), links[r].producer, links[r].market, q);
    }
    eq.flows(links[r].market, links[r].producer) = std::max(0.0, q);
  }
  eq.consumer_prices.resize(n);
  eq.producer_prices.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    eq.consumer_prices[k] = pattern.sources(k).empty()
                                ? economy.countries[k].demand.intercept()
                                : as_double(sol.consumer_prices[k]);
    eq.producer_prices[k] = pattern.destinations(k).empty()
                                ? economy.countries[k].supply.intercept()
                                : as_double(sol.producer_prices[k]);
  }
  eq.pattern = pattern_from_flows(eq.flows, options.flow_tolerance);
  eq.support = pattern;
  eq.diagnostics.iterations = sol.rounds;

  double slack = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const auto profile = effective_revenue(eq.consumer_prices, economy.tariffs, j,
                                           options.tie_tolerance);
    slack = std::max(slack, std::abs(profile.max - eq.producer_prices[j]) / (1.0 + profile.max));
  }
  eq.diagnostics.max_selection_slack = slack;
  return eq;
}

}  // namespace

Equilibrium solve_fixed_network(const Economy& economy, const TradePattern& pattern,
                                const SolverOptions& options) {
  require_valid(economy);
  validate_options(options);
  if (pattern.countries() != economy.size()) {
    throw DomainError("pattern does not match the economy size");
  }
  if (pattern.empty()) throw DomainError("fixed network has no links");

  const std::vector<Link> links(pattern.links().begin(), pattern.links().end());
  Equilibrium eq;
  if (options.exact) {
    const auto sol = solve_pattern<Rational>(economy, links, decimal_rational);
    eq = to_equilibrium(economy, pattern, links, sol, options);
    eq.diagnostics.method = "fixed_network/exact";
  } else {
    const auto sol = solve_pattern<double>(economy, links, [](double v) { return v; });
    eq = to_equilibrium(economy, pattern, links, sol, options);
    eq.diagnostics.method = "fixed_network";
  }
  return eq;
}

}  // namespace tariffnet
