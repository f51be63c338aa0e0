#include <algorithm>
#include <cmath>

#include "tariffnet/equilibrium.hpp"
#include "tariffnet/errors.hpp"
#include "tariffnet/flows.hpp"

namespace tariffnet {

std::string to_string(SolveMethod method) {
  switch (method) {
    case SolveMethod::fixed_network: return "fixed_network";
    case SolveMethod::tatonnement: return "tatonnement";
    case SolveMethod::enumerate: return "enumerate";
  }
  return "unknown";
}

std::optional<SolveMethod> parse_method(std::string_view text) {
  if (text == "fixed_network") return SolveMethod::fixed_network;
  if (text == "tatonnement") return SolveMethod::tatonnement;
  if (text == "enumerate") return SolveMethod::enumerate;
  return std::nullopt;
}

std::string to_string(SelectionViolation::Kind kind) {
  switch (kind) {
    case SelectionViolation::Kind::better_destination: return "better_destination";
    case SelectionViolation::Kind::suboptimal_destination: return "suboptimal_destination";
    case SelectionViolation::Kind::price_above_revenue: return "price_above_revenue";
    case SelectionViolation::Kind::idle_but_profitable: return "idle_but_profitable";
  }
  return "unknown";
}

void validate_options(const SolverOptions& options) {
  if (!(options.price_tolerance > 0.0) || !(options.tie_tolerance > 0.0) ||
      !(options.flow_tolerance > 0.0)) {
    throw DomainError("solver tolerances must be positive");
  }
  if (!(options.damping > 0.0 && options.damping <= 1.0)) {
    throw DomainError("damping must lie in (0, 1]");
  }
  if (options.max_iterations <= 0) throw DomainError("max_iterations must be positive");
}

double Equilibrium::consumption(std::size_t market) const {
  double total = 0.0;
  for (std::size_t j = 0; j < flows.cols(); ++j) total += flows(market, j);
  return total;
}

double Equilibrium::production(std::size_t producer) const {
  double total = 0.0;
  for (std::size_t i = 0; i < flows.rows(); ++i) total += flows(i, producer);
  return total;
}

RevenueProfile effective_revenue(std::span<const double> consumer_prices,
                                 const TariffMatrix& tariffs, std::size_t producer,
                                 double tie_tolerance) {
  const std::size_t n = consumer_prices.size();
  if (tariffs.rows() != n || producer >= n) {
    throw DomainError("price vector, tariff matrix and producer index disagree");
  }
  RevenueProfile out;
  out.revenue.resize(n);
  out.max = -1.0;
  for (std::size_t h = 0; h < n; ++h) {
    if (!(consumer_prices[h] >= 0.0)) throw DomainError("consumer prices must be nonnegative");
    out.revenue[h] = consumer_prices[h] / tariffs.markup(h, producer);
    out.max = std::max(out.max, out.revenue[h]);
  }
  for (std::size_t h = 0; h < n; ++h) {
    if (out.revenue[h] >= out.max * (1.0 - tie_tolerance)) out.argmax.push_back(h);
  }
  return out;
}

std::vector<ResponseEntry> best_response(const Economy& economy,
                                         std::span<const double> consumer_prices,
                                         double producer_price, std::size_t producer,
                                         double tie_tolerance) {
  const auto profile =
      effective_revenue(consumer_prices, economy.tariffs, producer, tie_tolerance);
  const Curve& supply = economy.countries[producer].supply;
  std::vector<ResponseEntry> column(economy.size());
  for (std::size_t h = 0; h < economy.size(); ++h) {
    const double rev = profile.revenue[h];
    const double cap = cap_quantity(supply, economy.countries[h].demand);
    if (rev > producer_price * (1.0 + tie_tolerance)) {
      column[h] = {cap, cap, false};
    } else if (rev >= producer_price * (1.0 - tie_tolerance)) {
      column[h] = {0.0, cap, true};
    }
  }
  return column;
}

std::vector<SelectionViolation> verify_selection(const Economy& economy,
                                                 const Equilibrium& eq,
                                                 const SolverOptions& options) {
  const std::size_t n = economy.size();
  if (eq.size() != n || eq.producer_prices.size() != n || eq.flows.rows() != n) {
    throw DomainError("equilibrium does not match the economy");
  }
  const double tol = options.price_tolerance;
  std::vector<SelectionViolation> out;
  for (std::size_t j = 0; j < n; ++j) {
    const auto profile = effective_revenue(eq.consumer_prices, economy.tariffs, j,
                                           options.tie_tolerance);
    const double pf = eq.producer_prices[j];
    if (eq.production(j) > options.flow_tolerance) {
      for (std::size_t h = 0; h < n; ++h) {
        const double gap = profile.revenue[h] - pf;
        if (gap > tol * (1.0 + std::abs(pf))) {
          out.push_back({SelectionViolation::Kind::better_destination, j, h, gap});
        }
      }
      if (pf - profile.max > tol * (1.0 + profile.max)) {
        out.push_back({SelectionViolation::Kind::price_above_revenue, j, std::nullopt,
                       pf - profile.max});
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (eq.flows(i, j) <= options.flow_tolerance) continue;
        if (std::find(profile.argmax.begin(), profile.argmax.end(), i) ==
            profile.argmax.end()) {
          out.push_back({SelectionViolation::Kind::suboptimal_destination, j, i,
                         profile.max - profile.revenue[i]});
        }
      }
    } else {
      const double s0 = economy.countries[j].supply.intercept();
      if (profile.max - s0 > tol * (1.0 + s0)) {
        out.push_back({SelectionViolation::Kind::idle_but_profitable, j,
                       profile.argmax.front(), profile.max - s0});
      }
    }
  }
  return out;
}

namespace {

double selection_slack(const Economy& economy, const Equilibrium& eq,
                       const SolverOptions& options) {
  double slack = 0.0;
  for (std::size_t j = 0; j < economy.size(); ++j) {
    const auto profile = effective_revenue(eq.consumer_prices, economy.tariffs, j,
                                           options.tie_tolerance);
    if (eq.production(j) > options.flow_tolerance) {
      slack = std::max(slack, std::abs(eq.producer_prices[j] - profile.max) /
                                  (1.0 + profile.max));
    } else {
      const double s0 = economy.countries[j].supply.intercept();
      slack = std::max(slack, std::max(0.0, profile.max - s0) / (1.0 + s0));
    }
  }
  return slack;
}

}  // namespace

std::optional<Equilibrium> equilibrium_at_prices(const Economy& economy,
                                                 std::vector<double> consumer_prices,
                                                 const SolverOptions& options) {
  const std::size_t n = economy.size();
  if (consumer_prices.size() != n) throw DomainError("price vector has the wrong length");

  Equilibrium eq;
  eq.producer_prices.assign(n, 0.0);
  eq.support = TradePattern(n);
  std::vector<double> supplies(n, 0.0);
  std::vector<double> demands(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto profile = effective_revenue(consumer_prices, economy.tariffs, j,
                                           options.tie_tolerance);
    const Curve& supply = economy.countries[j].supply;
    if (profile.max > supply.intercept()) {
      eq.producer_prices[j] = profile.max;
      supplies[j] = supply.inverse(profile.max);
      for (std::size_t h : profile.argmax) eq.support.add(j, h);
    } else {
      eq.producer_prices[j] = supply.intercept();
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    demands[i] = economy.countries[i].demand.inverse(consumer_prices[i]);
  }

  try {
    eq.flows = canonical_flows(supplies, demands, eq.support, options.price_tolerance);
  } catch (const InfeasibleFlows&) {
    return std::nullopt;
  }
  eq.consumer_prices = std::move(consumer_prices);
  eq.pattern = pattern_from_flows(eq.flows, options.flow_tolerance);

  double residual = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    residual = std::max(residual, std::abs(eq.consumption(k) - demands[k]) / (1.0 + demands[k]));
    residual = std::max(residual, std::abs(eq.production(k) - supplies[k]) / (1.0 + supplies[k]));
  }
  eq.diagnostics.max_clearing_residual = residual;
  eq.diagnostics.max_selection_slack = selection_slack(economy, eq, options);
  eq.diagnostics.multiple_flows =
      has_multiple_flows(eq.flows, eq.support, options.flow_tolerance);
  return eq;
}

Equilibrium equilibrium_from_flows(const Economy& economy, const FlowMatrix& flows,
                                   const SolverOptions& options) {
  const std::size_t n = economy.size();
  if (flows.rows() != n || flows.cols() != n) {
    throw DomainError("flow matrix does not match the economy");
  }
  Equilibrium eq;
  eq.flows = flows;
  eq.pattern = pattern_from_flows(flows, options.flow_tolerance);
  eq.support = eq.pattern;
  eq.consumer_prices.resize(n);
  eq.producer_prices.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    eq.consumer_prices[k] = economy.countries[k].demand.eval(eq.consumption(k));
    eq.producer_prices[k] = economy.countries[k].supply.eval(eq.production(k));
  }
  eq.diagnostics.method = "given flows";
  eq.diagnostics.max_selection_slack = selection_slack(economy, eq, options);
  eq.diagnostics.multiple_flows =
      has_multiple_flows(eq.flows, eq.support, options.flow_tolerance);
  return eq;
}

}  // namespace tariffnet
