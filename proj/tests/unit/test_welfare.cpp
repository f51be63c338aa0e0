#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "tariffnet/equilibrium.hpp"
#include "tariffnet/errors.hpp"
#include "tariffnet/scenario_io.hpp"
#include "tariffnet/welfare.hpp"

using namespace tariffnet;

namespace {

constexpr std::size_t EU = 0, USA = 1, CHINA = 2;
const double kP = 39.75 / 8.45;

Scenario load(const std::string& file) { return load_scenario(oracle::scenario_path(file)); }

Country country(double s0, double s1, double d0, double d1) {
  return {"X", "X", Curve::linear(CurveKind::supply, s0, s1),
          Curve::linear(CurveKind::demand, d0, d1)};
}

}  // namespace

TEST_CASE("consumer surplus") {
  CHECK(consumer_surplus(country(2, 0.5, 8, 1), kP) ==
        doctest::Approx(0.5 * (8 - kP) * (8 - kP)).epsilon(1e-13));
  CHECK(consumer_surplus(country(2, 0.5, 8, 1), kP) == doctest::Approx(5.432).epsilon(1e-3 / 5.432));
  CHECK(consumer_surplus(country(3, 0.5, 7, 0.8), kP) ==
        doctest::Approx(0.5 * (7 - kP) * (7 - kP) / 0.8).epsilon(1e-13));
  CHECK(consumer_surplus(country(3, 0.5, 7, 0.8), 7.0) == 0.0);
  CHECK(consumer_surplus(country(3, 0.5, 7, 0.8), 9.0) == 0.0);
}

TEST_CASE("firm profits") {
  CHECK(firm_profits(country(3, 0.5, 7, 0.8), kP) ==
        doctest::Approx(0.5 * (kP - 3) * (kP - 3) / 0.5).epsilon(1e-13));
  CHECK(std::abs(firm_profits(country(3, 0.5, 7, 0.8), kP) - 2.904) <= 1e-3);
  const double p = 13.4 / 2.6;
  CHECK(std::abs(firm_profits(country(4, 0.5, 7, 0.8), p) - 1.33) <= 0.01);
  CHECK(firm_profits(country(4, 0.5, 7, 0.8), 4.0) == 0.0);
  CHECK(firm_profits(country(4, 0.5, 7, 0.8), 1.0) == 0.0);
}

TEST_CASE("tariff revenue and the scenario 1 report") {
  const Scenario s = load("scenario1.json");
  const Equilibrium eq = solve_fixed_network(s.economy, *s.fixed_network);
  const double q32 = eq.flows(CHINA, USA);
  CHECK(tariff_revenue(s.economy, eq, CHINA) == doctest::Approx(0.1 * kP * q32).epsilon(1e-12));
  CHECK(std::abs(tariff_revenue(s.economy, eq, CHINA) - 1.247) <= 1e-3);
  CHECK(tariff_revenue(s.economy, eq, USA) == 0.0);
  CHECK_THROWS_AS(tariff_revenue(s.economy, eq, 3), DomainError);

  const WelfareReport r = welfare_report(s.economy, eq);
  const CountryWelfare& usa = r.countries[USA];
  CHECK(std::abs(usa.consumer_surplus - 3.294) <= 1e-3);
  CHECK(std::abs(usa.firm_profits - 2.904) <= 1e-3);
  CHECK(usa.tariff_revenue == 0.0);
  CHECK(std::abs(usa.total - 6.19) <= 0.01);
  CHECK(std::abs(usa.total - 6.199) <= 1e-3);
  for (const CountryWelfare& w : r.countries) {
    CHECK(w.total - (w.consumer_surplus + w.firm_profits + w.tariff_revenue) == 0.0);
    CHECK_FALSE(w.revenue_range);
  }
  CHECK(r.world.total - (r.world.consumer_surplus + r.world.firm_profits +
                         r.world.tariff_revenue) == 0.0);
}

TEST_CASE("scenario 2 variant welfare") {
  const Scenario s = load("scenario2-variant.json");
  const WelfareReport r = welfare_report(s.economy, solve_equilibrium(s.economy));
  CHECK(std::abs(r.countries[USA].consumer_surplus - 2.13) <= 0.01);
  CHECK(std::abs(r.countries[USA].firm_profits - 1.33) <= 0.01);
  CHECK(r.countries[USA].tariff_revenue == 0.0);
  CHECK(std::abs(r.countries[USA].total - 3.461) <= 1e-3);
}

TEST_CASE("revenue range under flow multiplicity") {
  const Scenario s = load("scenario1.json");
  const Equilibrium eq = solve_equilibrium(s.economy);
  REQUIRE(eq.diagnostics.multiple_flows);
  const WelfareReport r = welfare_report(s.economy, eq);
  REQUIRE(r.countries[CHINA].revenue_range);
  // China's imports total 2.6509 whoever sends them; both exporters earn kP.
  CHECK(r.countries[CHINA].revenue_range->first == doctest::Approx(r.countries[CHINA].revenue_range->second));
  CHECK(r.countries[CHINA].tariff_revenue == doctest::Approx(0.1 * kP * 2.6509).epsilon(1e-4));
}

TEST_CASE("autarkic single country gets the full surplus") {
  Economy e;
  e.countries = {country(2, 0.5, 8, 1)};
  e.tariffs = TariffMatrix(1);
  const WelfareReport r = welfare_report(e, solve_equilibrium(e));
  // Triangle between the curves up to q = 4: 0.5 * 4 * (8 - 2).
  CHECK(r.countries[0].total == doctest::Approx(12.0));
}

TEST_CASE("closed-form surpluses match quadrature") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const double a = 6 + 4 * u(rng), b = 0.5 + u(rng);
    Country c{"X", "X",
              Curve::piecewise(CurveKind::supply, {{0, 1 + u(rng)}, {2, 3 + u(rng)}}, 0.3 + u(rng)),
              Curve::piecewise(CurveKind::demand, {{0, a}, {1 + u(rng), a - 2}}, -b)};
    const double pd = a * u(rng);
    const double qd = c.demand.inverse(pd);
    const double cs = oracle::simpson([&](double x) { return c.demand.eval(x) - pd; }, 0.0, qd);
    CHECK(consumer_surplus(c, pd) == doctest::Approx(cs).epsilon(1e-8));
    const double ps = c.supply.intercept() + 6 * u(rng);
    const double qs = c.supply.inverse(ps);
    const double fp = oracle::simpson([&](double x) { return ps - c.supply.eval(x); }, 0.0, qs);
    CHECK(firm_profits(c, ps) == doctest::Approx(fp).epsilon(1e-8));
  }
}

TEST_CASE("surplus monotonicity") {
  const Country c = country(2, 0.5, 8, 1);
  double last_cs = 1e300, last_fp = -1.0;
  for (double p = 0.0; p <= 10.0; p += 0.05) {
    const double cs = consumer_surplus(c, p), fp = firm_profits(c, p);
    CHECK(cs <= last_cs);
    CHECK(fp >= last_fp);
    last_cs = cs;
    last_fp = fp;
  }
}
