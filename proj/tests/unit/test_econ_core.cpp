#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "tariffnet/curve.hpp"
#include "tariffnet/economy.hpp"
#include "tariffnet/errors.hpp"
#include "tariffnet/matrix.hpp"
#include "tariffnet/rational.hpp"

using namespace tariffnet;

namespace {

Curve supply(double a, double b) { return Curve::linear(CurveKind::supply, a, b); }
Curve demand(double a, double b) { return Curve::linear(CurveKind::demand, a, b); }

Economy wine_economy() {
  Economy e;
  e.countries = {{"EU", "European Union", supply(2, 0.5), demand(8, 1)},
                 {"USA", "United States", supply(3, 0.5), demand(7, 0.8)},
                 {"China", "China", supply(5, 1), demand(8, 1)}};
  e.tariffs = TariffMatrix(3);
  e.tariffs.set(2, 0, 0.1);
  e.tariffs.set(2, 1, 0.1);
  return e;
}

}  // namespace

TEST_CASE("curve evaluation on the wine curves") {
  CHECK(supply(2, 0.5).eval(3.30) == doctest::Approx(3.65));
  CHECK(demand(8, 1).eval(0.0) == 8.0);
  CHECK(demand(8, 1).eval(10.0) == 0.0);
  CHECK_THROWS_AS(supply(2, 0.5).eval(-1.0), DomainError);
}

TEST_CASE("curve inverse") {
  const double p = 39.75 / 8.45;
  const double q = demand(7, 0.8).inverse(p);
  CHECK(q == doctest::Approx((7.0 - p) / 0.8).epsilon(1e-14));
  CHECK(q == doctest::Approx(2.8698).epsilon(1e-4));
  CHECK(demand(7, 0.8).eval(q) == doctest::Approx(p).epsilon(1e-14));
  CHECK(supply(5, 1).inverse(4.0) == 0.0);
  CHECK(supply(2, 0.5).inverse(2.0) == 0.0);
  CHECK(demand(8, 1).inverse(9.0) == 0.0);
}

TEST_CASE("curve integral") {
  const double q = 3.2959;
  CHECK(demand(8, 1).integral(0.0, q) == doctest::Approx(8 * q - q * q / 2).epsilon(1e-14));
  CHECK(demand(8, 1).integral(0.0, q) == doctest::Approx(20.936).epsilon(1e-4));
  CHECK(supply(2, 0.5).integral(0.0, 0.0) == 0.0);
  CHECK(supply(2, 0.5).integral(0.0, 4.0) == doctest::Approx(12.0));
  // Past the choke quantity nothing is added.
  CHECK(demand(8, 1).integral(0.0, 20.0) == doctest::Approx(32.0));
  CHECK_THROWS_AS(supply(2, 0.5).integral(2.0, 1.0), DomainError);
}

TEST_CASE("piecewise curves") {
  const Curve s = Curve::piecewise(CurveKind::supply, {{0, 1}, {2, 2}, {4, 5}});
  CHECK(s.eval(1.0) == doctest::Approx(1.5));
  CHECK(s.eval(3.0) == doctest::Approx(3.5));
  CHECK(s.eval(6.0) == doctest::Approx(8.0));  // terminal slope reuses 1.5
  CHECK(s.inverse(3.5) == doctest::Approx(3.0));
  CHECK(s.integral(0.0, 4.0) == doctest::Approx(3.0 + 7.0));
  CHECK(s.violations().empty());

  const Curve d = Curve::piecewise(CurveKind::demand, {{0, 10}, {2, 6}}, -0.5);
  CHECK(d.choke_quantity() == doctest::Approx(14.0));
  CHECK(d.eval(20.0) == 0.0);
  CHECK(d.inverse(5.0) == doctest::Approx(4.0));

  const Curve flat = Curve::piecewise(CurveKind::supply, {{0, 1}, {1, 1}});
  CHECK_FALSE(flat.violations().empty());
  const Curve backwards = Curve::piecewise(CurveKind::supply, {{0, 1}, {2, 3}, {1, 4}});
  CHECK_FALSE(backwards.violations().empty());
}

TEST_CASE("cap quantity") {
  CHECK(cap_quantity(supply(2, 0.5), demand(8, 1)) == doctest::Approx(4.0));
  CHECK(cap_quantity(supply(9, 1), demand(8, 1)) == 0.0);
  CHECK(cap_quantity(supply(5, 1), demand(8, 1)) == doctest::Approx(1.5));
}

TEST_CASE("validate economy") {
  Economy e = wine_economy();
  CHECK(validate_economy(e).empty());

  Economy negative = e;
  negative.tariffs.set(0, 1, -0.1);
  auto issues = validate_economy(negative);
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].message == "negative tariff");
  CHECK(issues[0].path == "tariffs[0][1]");

  Economy diagonal = e;
  diagonal.tariffs.set(0, 0, 0.05);
  issues = validate_economy(diagonal);
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].message == "nonzero diagonal");

  Economy mismatch = e;
  mismatch.tariffs = TariffMatrix(2);
  issues = validate_economy(mismatch);
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].path == "tariffs");

  Economy bad_curve = e;
  bad_curve.countries[1].supply = supply(3, -0.5);
  CHECK_FALSE(validate_economy(bad_curve).empty());
  CHECK_THROWS_AS(require_valid(bad_curve), DomainError);
}

TEST_CASE("autarky prices") {
  const Economy e = wine_economy();
  CHECK(autarky_price(e.countries[0]) == doctest::Approx(4.0));
  CHECK(autarky_price(e.countries[1]) == doctest::Approx(7.0 - 0.8 * 4.0 / 1.3));
  CHECK(autarky_price(e.countries[2]) == doctest::Approx(6.5));
}

TEST_CASE("curve properties on random curves") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const double a = 1 + 5 * u(rng), b = 0.1 + 2 * u(rng);
    const Curve s = supply(a, b);
    const double ps = a + 10 * u(rng);
    CHECK(s.eval(s.inverse(ps)) == doctest::Approx(ps).epsilon(1e-9));

    const Curve d = Curve::piecewise(CurveKind::demand,
                                     {{0, a + 6}, {1 + u(rng), a + 3}, {4 + u(rng), a}}, -b);
    const double pd = (a + 6) * u(rng);
    CHECK(d.eval(d.inverse(pd)) == doctest::Approx(pd).epsilon(1e-9));

    const double x = 5 * u(rng), y = x + 5 * u(rng), z = y + 5 * u(rng);
    const double whole = d.integral(x, z);
    CHECK(d.integral(x, y) + d.integral(y, z) == doctest::Approx(whole).epsilon(1e-12));

    const Curve other = demand(1 + 9 * u(rng), 0.2 + u(rng));
    const bool zero = cap_quantity(s, other) == 0.0;
    CHECK(zero == (s.intercept() >= other.intercept()));
  }
}

TEST_CASE("decimal rationals are exact") {
  CHECK(decimal_rational(0.1) == Rational(1, 10));
  CHECK(decimal_rational(0.8) == Rational(4, 5));
  CHECK(decimal_rational(-2.5) == Rational(-5, 2));
  CHECK(decimal_rational(1e-7) == Rational(1, 10000000));
  CHECK(decimal_rational(3e20) == Rational(300000000000000000000.0));
  CHECK(decimal_rational(0.0) == Rational(0));
}

TEST_CASE("linear solves in double and rational arithmetic") {
  Matrix<double> a(2, 2);
  a(0, 0) = 1;
  a(0, 1) = 2;
  a(1, 0) = 3;
  a(1, 1) = 4;
  const auto x = solve_linear(a, std::vector<double>{5, 6});
  REQUIRE(x);
  CHECK((*x)[0] == doctest::Approx(-4.0));
  CHECK((*x)[1] == doctest::Approx(4.5));

  Matrix<Rational> r(2, 2);
  r(0, 0) = 0;
  r(0, 1) = 1;
  r(1, 0) = Rational(1, 3);
  r(1, 1) = 1;
  const auto y = solve_linear(r, std::vector<Rational>{1, 2});
  REQUIRE(y);
  CHECK((*y)[0] == 3);
  CHECK((*y)[1] == 1);

  Matrix<double> singular(2, 2, 1.0);
  CHECK_FALSE(solve_linear(singular, std::vector<double>{1, 2}));
}
