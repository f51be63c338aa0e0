#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

#include "tariffnet/equilibrium.hpp"
#include "tariffnet/errors.hpp"
#include "tariffnet/flows.hpp"

namespace tariffnet {
namespace {

constexpr long kRefineEvery = 10;
constexpr double kRefineBands[] = {0.0, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 5e-2};
constexpr double kFactorMismatch = 1e-9;
constexpr double kInitialTemperature = 0.05;
constexpr double kCooling = 0.99;

// Consumer prices implied by a candidate support. Every link j -> i ties
// p_c[i] = (1 + t[i][j]) p_f[j], so each connected component of the support
// has a single free price level r; it is pinned by aggregate clearing
//   sum_markets D(f_i r) = sum_producers S(f_j r),
// a nonincreasing piecewise-linear equation in r solved exactly between
// kinks. Markets outside every component sit at their choke price.
std::optional<std::vector<double>> support_prices(const Economy& economy,
                                                  const TradePattern& support) {
  const std::size_t n = economy.size();
  // Nodes 0..n-1 are producers, n..2n-1 markets.
  struct Arc {
    std::size_t to;
    double factor;
  };
  std::vector<std::vector<Arc>> arcs(2 * n);
  for (const Link& l : support.links()) {
    const double markup = economy.tariffs.markup(l.market, l.producer);
    arcs[l.producer].push_back({n + l.market, markup});
    arcs[n + l.market].push_back({l.producer, 1.0 / markup});
  }

  std::vector<double> prices(n);
  for (std::size_t i = 0; i < n; ++i) prices[i] = economy.countries[i].demand.intercept();

  std::vector<double> factor(2 * n, 0.0);
  std::vector<bool> seen(2 * n, false);
  for (std::size_t root = 0; root < 2 * n; ++root) {
    if (seen[root] || arcs[root].empty()) continue;
    std::vector<std::size_t> members{root};
    std::deque<std::size_t> queue{root};
    seen[root] = true;
    factor[root] = 1.0;
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      for (const Arc& arc : arcs[v]) {
        const double f = factor[v] * arc.factor;
        if (seen[arc.to]) {
          if (std::abs(factor[arc.to] - f) > kFactorMismatch * f) return std::nullopt;
          continue;
        }
        seen[arc.to] = true;
        factor[arc.to] = f;
        members.push_back(arc.to);
        queue.push_back(arc.to);
      }
    }

    auto excess = [&](double r) {
      double g = 0.0;
      for (std::size_t v : members) {
        const double p = factor[v] * r;
        if (v >= n) {
          g += economy.countries[v - n].demand.inverse(p);
        } else {
          g -= economy.countries[v].supply.inverse(p);
        }
      }
      return g;
    };

    std::vector<double> kinks;
    for (std::size_t v : members) {
      const Curve& c = v >= n ? economy.countries[v - n].demand : economy.countries[v].supply;
      for (double p : c.price_breakpoints()) {
        if (p > 0.0) kinks.push_back(p / factor[v]);
      }
    }
    std::sort(kinks.begin(), kinks.end());

    double lo = 0.0;
    double g_lo = excess(0.0);
    std::optional<double> level;
    for (double r : kinks) {
      const double g = excess(r);
      if (g <= 0.0) {
        level = g_lo == g ? r : lo + g_lo * (r - lo) / (g_lo - g);
        break;
      }
      lo = r;
      g_lo = g;
    }
    if (!level) {
      const double probe = 2.0 * lo + 1.0;
      const double slope = (excess(probe) - g_lo) / (probe - lo);
      if (!(slope < 0.0)) return std::nullopt;
      level = lo - g_lo / slope;
    }
    for (std::size_t v : members) {
      if (v >= n) prices[v - n] = factor[v] * *level;
    }
  }
  return prices;
}

// Guess the support from approximate prices with a relative band around
// each producer's best revenue, solve it exactly, and keep the result only
// if it is a genuine equilibrium.
std::optional<Equilibrium> refine(const Economy& economy, const std::vector<double>& prices,
                                  const SolverOptions& options) {
  const std::size_t n = economy.size();
  std::vector<TradePattern> tried;
  for (double band : kRefineBands) {
    band = std::max(band, options.tie_tolerance);
    TradePattern support(n);
    for (std::size_t j = 0; j < n; ++j) {
      const auto profile = effective_revenue(prices, economy.tariffs, j, band);
      if (profile.max < economy.countries[j].supply.intercept() * (1.0 - band)) continue;
      for (std::size_t h : profile.argmax) support.add(j, h);
    }
    if (std::find(tried.begin(), tried.end(), support) != tried.end()) continue;
    tried.push_back(support);

    const auto candidate = support_prices(economy, support);
    if (!candidate) continue;
    auto eq = equilibrium_at_prices(economy, *candidate, options);
    if (!eq || eq->diagnostics.max_clearing_residual > options.price_tolerance) continue;
    if (!verify_selection(economy, *eq, options).empty()) continue;
    return eq;
  }
  return std::nullopt;
}

struct ExcessDemand {
  std::vector<double> relative;
  double max_abs = 0.0;
};

// Relative excess demand per market. Each active producer offers its supply
// at the best revenue, split over near-best destinations with logit weights
// of relative temperature `temperature`; a hard argmax would make the
// excess discontinuous wherever two destinations tie and stall the steps.
ExcessDemand excess_demand(const Economy& economy, const std::vector<double>& prices,
                           double temperature) {
  const std::size_t n = economy.size();
  std::vector<double> offered(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto profile = effective_revenue(prices, economy.tariffs, j, 0.0);
    const double s0 = economy.countries[j].supply.intercept();
    if (!(profile.max > s0)) continue;
    const double supply = economy.countries[j].supply.inverse(profile.max);
    const double scale = temperature * profile.max;
    std::vector<double> weight(n, 0.0);
    double total = 0.0;
    for (std::size_t h = 0; h < n; ++h) {
      const double gap = (profile.max - profile.revenue[h]) / scale;
      if (gap < 40.0) total += weight[h] = std::exp(-gap);
    }
    for (std::size_t h = 0; h < n; ++h) offered[h] += supply * weight[h] / total;
  }

  ExcessDemand out;
  out.relative.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double demand = economy.countries[i].demand.inverse(prices[i]);
    const double scale = demand + offered[i];
    if (scale > 0.0) {
      out.relative[i] = (demand - offered[i]) / scale;
    } else {
      // Nothing demanded or offered: a price above the choke level must fall.
      out.relative[i] = prices[i] > economy.countries[i].demand.intercept() ? -1.0 : 0.0;
    }
    out.max_abs = std::max(out.max_abs, std::abs(out.relative[i]));
  }
  return out;
}

}  // namespace

Equilibrium solve_equilibrium(const Economy& economy, const SolverOptions& options) {
  require_valid(economy);
  validate_options(options);
  if (options.method == SolveMethod::enumerate) {
    auto all = enumerate_equilibria(economy, options);
    if (all.empty()) throw ConvergenceFailure("enumeration found no equilibrium", 0, 0, 0);
    return all.front();
  }
  if (options.method == SolveMethod::fixed_network) {
    throw DomainError("fixed_network needs a pattern; use solve_fixed_network");
  }

  const std::size_t n = economy.size();
  std::vector<double> prices(n);
  if (options.initial_prices) {
    if (options.initial_prices->size() != n) {
      throw DomainError("initial price vector has the wrong length");
    }
    prices = *options.initial_prices;
  } else {
    for (std::size_t i = 0; i < n; ++i) prices[i] = autarky_price(economy.countries[i]);
  }
  for (double& p : prices) {
    if (!(p > 0.0)) p = 1e-6;
  }

  std::vector<double> step(n, options.damping);
  std::vector<double> previous(n, 0.0);
  double last_excess = std::numeric_limits<double>::infinity();
  double temperature = kInitialTemperature;
  for (long it = 0; it < options.max_iterations; ++it) {
    const auto z = excess_demand(economy, prices, temperature);
    temperature = std::max(options.tie_tolerance, temperature * kCooling);
    last_excess = z.max_abs;
    if (it % kRefineEvery == 0 || z.max_abs <= options.price_tolerance) {
      if (auto eq = refine(economy, prices, options)) {
        eq->diagnostics.iterations = it;
        eq->diagnostics.method = "tatonnement";
        return *eq;
      }
    }
    if (z.max_abs <= options.price_tolerance) {
      if (auto eq = equilibrium_at_prices(economy, prices, options);
          eq && verify_selection(economy, *eq, options).empty()) {
        eq->diagnostics.iterations = it;
        eq->diagnostics.method = "tatonnement";
        return *eq;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (z.relative[i] * previous[i] < 0.0) {
        step[i] *= 0.5;
      } else {
        step[i] = std::min(options.damping, step[i] * 1.05);
      }
      prices[i] *= std::exp(step[i] * z.relative[i]);
      previous[i] = z.relative[i];
    }
  }

  std::ostringstream msg;
  msg << "tatonnement did not converge in " << options.max_iterations
      << " iterations (max relative excess demand " << last_excess
      << "); try --method enumerate";
  throw ConvergenceFailure(msg.str(), last_excess, 0.0, options.max_iterations);
}

Equilibrium solve_with_fallback(const Economy& economy, const SolverOptions& options) {
  try {
    return solve_equilibrium(economy, options);
  } catch (const ConvergenceFailure&) {
    if (options.method != SolveMethod::tatonnement || economy.size() > kEnumerationLimit) {
      throw;
    }
    auto all = enumerate_equilibria(economy, options);
    if (all.empty()) throw;
    all.front().diagnostics.method = "enumerate (fallback)";
    return all.front();
  }
}

}  // namespace tariffnet
