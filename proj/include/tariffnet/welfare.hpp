#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tariffnet/economy.hpp"
#include "tariffnet/equilibrium.hpp"

namespace tariffnet {

/// Area between the demand curve and the price up to the quantity demanded.
double consumer_surplus(const Country& country, double consumer_price);

/// Area between the price and the supply curve up to the quantity supplied.
double firm_profits(const Country& country, double producer_price);

/// sum_j t[i][j] * p_f[j] * q[i][j] for importer i.
double tariff_revenue(const Economy& economy, const Equilibrium& eq, std::size_t importer);

struct CountryWelfare {
  double consumer_surplus = 0.0;
  double firm_profits = 0.0;
  double tariff_revenue = 0.0;
  double total = 0.0;
  /// Range of tariff revenue over every flow matrix consistent with the
  /// equilibrium prices; set only when the flows are not unique.
  std::optional<std::pair<double, double>> revenue_range;
};

struct WelfareReport {
  std::vector<CountryWelfare> countries;
  CountryWelfare world;  // component-wise sums
};

WelfareReport welfare_report(const Economy& economy, const Equilibrium& eq);

}  // namespace tariffnet
