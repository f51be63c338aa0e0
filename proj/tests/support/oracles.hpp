#pragma once

// Independent reference computations for the test suites. Nothing here
// calls into the solver code paths it is used to check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "tariffnet/economy.hpp"
#include "tariffnet/equilibrium.hpp"

namespace oracle {

#ifndef TARIFFNET_SCENARIO_DIR
#define TARIFFNET_SCENARIO_DIR "scenarios"
#endif

inline std::string scenario_path(const std::string& file) {
  return std::string(TARIFFNET_SCENARIO_DIR) + "/" + file;
}

// Adaptive Simpson quadrature.
inline double simpson_step(const std::function<double(double)>& f, double a, double b,
                           double fa, double fm, double fb, double whole, double tol,
                           int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return simpson_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double simpson(const std::function<double(double)>& f, double a, double b,
                      double tol = 1e-13) {
  if (b <= a) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, 50);
}

// Cycle search by boolean transitive closure (Floyd-Warshall).
inline bool has_cycle(const std::vector<std::vector<bool>>& adj) {
  const std::size_t n = adj.size();
  auto reach = adj;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;
  for (std::size_t i = 0; i < n; ++i)
    if (reach[i][i]) return true;
  return false;
}

inline tariffnet::Economy random_linear_economy(std::mt19937_64& rng, std::size_t n,
                                                double tariff_lo, double tariff_hi) {
  std::uniform_real_distribution<double> s0(1.0, 4.0), s1(0.3, 1.5), d0(6.0, 10.0),
      d1(0.5, 1.5), tariff(tariff_lo, tariff_hi);
  tariffnet::Economy e;
  for (std::size_t i = 0; i < n; ++i) {
    tariffnet::Country c;
    c.id = "C" + std::to_string(i);
    c.name = c.id;
    c.supply = tariffnet::Curve::linear(tariffnet::CurveKind::supply, s0(rng), s1(rng));
    c.demand = tariffnet::Curve::linear(tariffnet::CurveKind::demand, d0(rng), d1(rng));
    e.countries.push_back(c);
  }
  e.tariffs = tariffnet::TariffMatrix(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) e.tariffs.set(i, j, tariff_hi > 0.0 ? tariff(rng) : 0.0);
  return e;
}

// Worst relative violation of the equilibrium conditions, checked directly
// on prices and flows:
//   consumption > 0  =>  p_c[i] = d_i(consumption)
//   production  > 0  =>  p_f[j] = s_j(production), else p_f[j] = s_j(0)
//   q[i][j] > 0      =>  p_c[i] = (1 + t[i][j]) p_f[j]
//   every i, j       =>  p_c[i] / (1 + t[i][j]) <= p_f[j]
inline double condition_residual(const tariffnet::Economy& e, const tariffnet::Equilibrium& eq,
                                 double flow_tol = 1e-9) {
  const std::size_t n = e.size();
  double worst = 0.0;
  auto rel = [](double a, double b) { return std::abs(a - b) / (1.0 + std::abs(b)); };
  for (std::size_t k = 0; k < n; ++k) {
    double consumed = 0.0, produced = 0.0;
    for (std::size_t h = 0; h < n; ++h) {
      if (eq.flows(k, h) < -flow_tol || eq.flows(h, k) < -flow_tol) return 1e300;
      consumed += eq.flows(k, h);
      produced += eq.flows(h, k);
    }
    if (consumed > flow_tol) {
      worst = std::max(worst, rel(eq.consumer_prices[k], e.countries[k].demand.eval(consumed)));
    } else {
      worst = std::max(worst, std::max(0.0, e.countries[k].demand.intercept() -
                                                eq.consumer_prices[k]) /
                                  (1.0 + eq.consumer_prices[k]));
    }
    const double s = produced > flow_tol ? e.countries[k].supply.eval(produced)
                                         : e.countries[k].supply.intercept();
    worst = std::max(worst, rel(eq.producer_prices[k], s));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double markup = 1.0 + e.tariffs.rate(i, j);
      const double revenue = eq.consumer_prices[i] / markup;
      if (eq.flows(i, j) > flow_tol) worst = std::max(worst, rel(revenue, eq.producer_prices[j]));
      worst = std::max(worst, std::max(0.0, revenue - eq.producer_prices[j]) /
                                  (1.0 + eq.producer_prices[j]));
    }
  }
  return worst;
}

// Fixed-network solve for linear economies over the 2n prices and m flows:
//   p_c[i] - (1 + t[i][j]) p_f[j] = 0      per link
//   sum_j q[i][j] + p_c[i] / b_i = a_i / b_i   per market with links
//   sum_i q[i][j] - p_f[j] / e_j = -c_j / e_j  per producer with links
// (d_i = a_i - b_i q, s_j = c_j + e_j q). Dense Gaussian elimination in long
// double. Markets and producers without links are pinned to their
// intercepts. Returns prices (consumer then producer) and flows per link.
struct LinearSolve {
  std::vector<double> consumer_prices;
  std::vector<double> producer_prices;
  std::vector<double> link_flows;
};

inline LinearSolve linear_fixed_network(const tariffnet::Economy& e,
                                        const std::vector<std::pair<std::size_t, std::size_t>>& links) {
  const std::size_t n = e.size(), m = links.size();
  const std::size_t unknowns = 2 * n + m;  // p_c, p_f, q
  std::vector<std::vector<long double>> a(unknowns, std::vector<long double>(unknowns + 1, 0.0L));
  std::size_t row = 0;
  std::vector<bool> market_linked(n, false), producer_linked(n, false);
  for (const auto& [producer, market] : links) {
    market_linked[market] = producer_linked[producer] = true;
  }
  for (std::size_t k = 0; k < m; ++k, ++row) {
    const auto [producer, market] = links[k];
    a[row][market] = 1.0L;
    a[row][n + producer] = -(1.0L + e.tariffs.rate(market, producer));
  }
  for (std::size_t i = 0; i < n; ++i, ++row) {
    const auto& d = e.countries[i].demand;
    const long double intercept = d.intercept(), slope = -d.terminal_slope();
    if (!market_linked[i]) {
      a[row][i] = 1.0L;
      a[row][unknowns] = intercept;
      continue;
    }
    for (std::size_t k = 0; k < m; ++k)
      if (links[k].second == i) a[row][2 * n + k] = 1.0L;
    a[row][i] = 1.0L / slope;
    a[row][unknowns] = intercept / slope;
  }
  for (std::size_t j = 0; j < n; ++j, ++row) {
    const auto& s = e.countries[j].supply;
    const long double intercept = s.intercept(), slope = s.terminal_slope();
    if (!producer_linked[j]) {
      a[row][n + j] = 1.0L;
      a[row][unknowns] = intercept;
      continue;
    }
    for (std::size_t k = 0; k < m; ++k)
      if (links[k].first == j) a[row][2 * n + k] = 1.0L;
    a[row][n + j] = -1.0L / slope;
    a[row][unknowns] = -intercept / slope;
  }
  for (std::size_t c = 0; c < unknowns; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < unknowns; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[pivot][c])) pivot = r;
    std::swap(a[c], a[pivot]);
    for (std::size_t r = 0; r < unknowns; ++r) {
      if (r == c || a[r][c] == 0.0L) continue;
      const long double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= unknowns; ++k) a[r][k] -= f * a[c][k];
    }
  }
  LinearSolve out;
  for (std::size_t i = 0; i < n; ++i) out.consumer_prices.push_back(double(a[i][unknowns] / a[i][i]));
  for (std::size_t j = 0; j < n; ++j)
    out.producer_prices.push_back(double(a[n + j][unknowns] / a[n + j][n + j]));
  for (std::size_t k = 0; k < m; ++k)
    out.link_flows.push_back(double(a[2 * n + k][unknowns] / a[2 * n + k][2 * n + k]));
  return out;
}

}  // namespace oracle
