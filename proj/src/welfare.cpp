#include "tariffnet/welfare.hpp"

#include <algorithm>

#include "tariffnet/errors.hpp"
#include "tariffnet/flows.hpp"

namespace tariffnet {

double consumer_surplus(const Country& country, double consumer_price) {
  const Curve& d = country.demand;
  const double q = d.inverse(consumer_price);
  if (q <= 0.0) return 0.0;
  return std::max(0.0, d.integral(0.0, q) - consumer_price * q);
}

double firm_profits(const Country& country, double producer_price) {
  const Curve& s = country.supply;
  const double q = s.inverse(producer_price);
  if (q <= 0.0) return 0.0;
  return std::max(0.0, producer_price * q - s.integral(0.0, q));
}

double tariff_revenue(const Economy& economy, const Equilibrium& eq, std::size_t importer) {
  if (importer >= economy.size()) throw DomainError("importer index out of range");
  double revenue = 0.0;
  for (std::size_t j = 0; j < economy.size(); ++j) {
    if (j == importer) continue;
    revenue += economy.tariffs.rate(importer, j) * eq.producer_prices[j] * eq.flows(importer, j);
  }
  return revenue;
}

WelfareReport welfare_report(const Economy& economy, const Equilibrium& eq) {
  const std::size_t n = economy.size();
  if (eq.size() != n) throw DomainError("equilibrium does not match the economy");

  std::vector<double> supplies(n), demands(n);
  for (std::size_t k = 0; k < n; ++k) {
    supplies[k] = eq.production(k);
    demands[k] = eq.consumption(k);
  }

  WelfareReport report;
  report.countries.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    CountryWelfare& w = report.countries[i];
    w.consumer_surplus = consumer_surplus(economy.countries[i], eq.consumer_prices[i]);
    w.firm_profits = firm_profits(economy.countries[i], eq.producer_prices[i]);
    w.tariff_revenue = tariff_revenue(economy, eq, i);
    w.total = w.consumer_surplus + w.firm_profits + w.tariff_revenue;

    if (eq.diagnostics.multiple_flows) {
      Matrix<double> weights(n, n, 0.0);
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) weights(i, j) = economy.tariffs.rate(i, j) * eq.producer_prices[j];
      }
      try {
        const auto range = flow_objective_range(supplies, demands, eq.support, weights, 1e-6);
        w.revenue_range = std::make_pair(range.min, range.max);
      } catch (const InfeasibleFlows&) {
        // Support and margins disagree (hand-built equilibrium); no range.
      }
    }

    report.world.consumer_surplus += w.consumer_surplus;
    report.world.firm_profits += w.firm_profits;
    report.world.tariff_revenue += w.tariff_revenue;
  }
  report.world.total = report.world.consumer_surplus + report.world.firm_profits +
                       report.world.tariff_revenue;
  return report;
}

}  // namespace tariffnet
