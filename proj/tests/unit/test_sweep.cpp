#include <doctest.h>

#include "oracles.hpp"
#include "tariffnet/errors.hpp"
#include "tariffnet/scenario_io.hpp"
#include "tariffnet/sweep.hpp"

using namespace tariffnet;

namespace {

constexpr std::size_t EU = 0, USA = 1, CHINA = 2;
const double kP = 39.75 / 8.45;

Economy wine() { return load_scenario(oracle::scenario_path("scenario1.json")).economy; }

}  // namespace

TEST_CASE("linear grid") {
  CHECK(linear_grid(0.0, 0.3, 7).size() == 7);
  CHECK(linear_grid(0.0, 0.3, 7).back() == 0.3);
  CHECK(linear_grid(0.1, 0.1, 1) == std::vector<double>{0.1});
  CHECK_THROWS_AS(linear_grid(0, 1, 0), DomainError);
}

TEST_CASE("pattern ids are stable") {
  const TradePattern a(3, {{0, 0}, {0, 1}});
  CHECK(pattern_id(a) == pattern_id(TradePattern(3, {{0, 1}, {0, 0}})));
  CHECK(pattern_id(a) != pattern_id(TradePattern(3, {{0, 0}})));
  CHECK(pattern_id(a) != pattern_id(TradePattern(4, {{0, 0}, {0, 1}})));
  CHECK(pattern_id(a).size() == 16);
}

TEST_CASE("USA tariff on EU goods reroutes trade without moving prices") {
  const SweepResult r = tariff_sweep(wine(), USA, EU, linear_grid(0.0, 0.3, 7));
  REQUIRE(r.rows.size() == 7);
  for (const SweepRow& row : r.rows) {
    REQUIRE(row.converged);
    CHECK(row.equilibrium->consumer_prices[EU] == doctest::Approx(kP).epsilon(1e-9));
    CHECK(row.equilibrium->consumer_prices[USA] == doctest::Approx(kP).epsilon(1e-9));
    CHECK(row.equilibrium->consumer_prices[CHINA] == doctest::Approx(1.1 * kP).epsilon(1e-9));
  }
  REQUIRE(r.regime_changes.size() == 1);
  const RegimeChange& c = r.regime_changes[0];
  CHECK(c.left_row == 0);
  CHECK(c.tariff_lo == 0.0);
  CHECK_FALSE(c.unknown);
  CHECK(c.removed == std::vector<Link>{{EU, USA}});
  CHECK(c.added.empty());
  for (double jump : c.welfare_jump) CHECK(jump == doctest::Approx(0.0).epsilon(1e-12).scale(1.0));
}

TEST_CASE("single point sweep equals the plain solve") {
  const Economy e = wine();
  const SweepResult r = tariff_sweep(e, CHINA, EU, {0.1});
  REQUIRE(r.rows.size() == 1);
  const Equilibrium direct = solve_with_fallback(e);
  CHECK(r.rows[0].equilibrium->consumer_prices == direct.consumer_prices);
  CHECK(r.regime_changes.empty());
}

TEST_CASE("sweep argument checks") {
  const Economy e = wine();
  CHECK_THROWS_AS(tariff_sweep(e, USA, USA, {0.1}), DomainError);
  CHECK_THROWS_AS(tariff_sweep(e, USA, 7, {0.1}), DomainError);
  CHECK_THROWS_AS(tariff_sweep(e, USA, EU, {}), DomainError);
  CHECK_THROWS_AS(tariff_sweep(e, USA, EU, {0.2, 0.1}), DomainError);
  CHECK_THROWS_AS(tariff_sweep(e, USA, EU, {-0.1, 0.1}), DomainError);
  Economy single;
  single.countries = {e.countries[0]};
  single.tariffs = TariffMatrix(1);
  CHECK_THROWS_AS(tariff_sweep(single, 0, 0, {0.1}), DomainError);
}

TEST_CASE("workers and warm starts do not change results") {
  const Economy e = wine();
  const auto grid = linear_grid(0.0, 0.6, 25);
  const SweepResult serial = tariff_sweep(e, CHINA, USA, grid);
  SweepOptions parallel;
  parallel.workers = 4;
  const SweepResult threaded = tariff_sweep(e, CHINA, USA, grid, parallel);
  SweepOptions warm;
  warm.warm_start = true;
  const SweepResult warmed = tariff_sweep(e, CHINA, USA, grid, warm);
  CHECK(write_results(serial, OutputFormat::csv) == write_results(threaded, OutputFormat::csv));
  for (std::size_t k = 0; k < grid.size(); ++k) {
    CHECK(serial.rows[k].pattern_id == warmed.rows[k].pattern_id);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(warmed.rows[k].equilibrium->consumer_prices[i] ==
            doctest::Approx(serial.rows[k].equilibrium->consumer_prices[i]).epsilon(1e-9));
    }
  }
}

TEST_CASE("prices are linear-fractional in the tariff inside a regime") {
  // China's tariff on USA goods: USA->China is active, so the China price is
  // (1 + t) times a level pinned by a linear clearing equation in (1 + t),
  // i.e. p(t) = (alpha + beta t) / (gamma + delta t).
  const Economy e = wine();
  const auto grid = linear_grid(0.0, 0.2, 21);
  const SweepResult r = tariff_sweep(e, CHINA, USA, grid);
  std::vector<std::vector<std::size_t>> runs{{0}};
  for (std::size_t k = 1; k < r.rows.size(); ++k) {
    if (r.rows[k].pattern_id == r.rows[k - 1].pattern_id) {
      runs.back().push_back(k);
    } else {
      runs.push_back({k});
    }
  }
  int tested = 0;
  for (const auto& run : runs) {
    if (run.size() < 5) continue;
    // Fit through three interior points, test the rest via cross-ratios.
    for (std::size_t market = 0; market < 3; ++market) {
      auto price = [&](std::size_t k) { return r.rows[k].equilibrium->consumer_prices[market]; };
      const std::size_t a = run[1], b = run[run.size() / 2], c = run[run.size() - 2];
      for (std::size_t k : run) {
        const double t[] = {grid[a], grid[b], grid[c], grid[k]};
        const double p[] = {price(a), price(b), price(c), price(k)};
        // A linear-fractional map preserves the cross-ratio of four points.
        auto cross = [](const double* x) {
          return ((x[0] - x[2]) * (x[1] - x[3])) / ((x[0] - x[3]) * (x[1] - x[2]));
        };
        if (k == a || k == b || k == c) continue;
        if (std::abs(p[0] - p[1]) < 1e-12) {
          CHECK(p[3] == doctest::Approx(p[0]).epsilon(1e-8));  // constant price
        } else {
          CHECK(cross(p) == doctest::Approx(cross(t)).epsilon(1e-6));
        }
        ++tested;
      }
    }
  }
  CHECK(tested > 0);
}

TEST_CASE("prices are constant where the swept link carries no trade") {
  const SweepResult r = tariff_sweep(wine(), EU, CHINA, linear_grid(0.0, 0.5, 11));
  for (const SweepRow& row : r.rows) {
    REQUIRE(row.converged);
    CHECK(row.equilibrium->consumer_prices[EU] == doctest::Approx(kP).epsilon(1e-9));
  }
  CHECK(r.regime_changes.empty());
}

TEST_CASE("welfare is continuous inside a regime") {
  const auto grid = linear_grid(0.0, 0.3, 61);
  const SweepResult r = tariff_sweep(wine(), CHINA, EU, grid);
  for (std::size_t k = 1; k < r.rows.size(); ++k) {
    if (r.rows[k].pattern_id != r.rows[k - 1].pattern_id) continue;
    for (std::size_t i = 0; i < 3; ++i) {
      const double jump =
          r.rows[k].welfare->countries[i].total - r.rows[k - 1].welfare->countries[i].total;
      CHECK(std::abs(jump) <= 20.0 * (grid[k] - grid[k - 1]));
    }
  }
}

TEST_CASE("failed rows make their boundaries unknown") {
  SweepResult r;
  r.country_ids = {"A", "B"};
  r.importer = 0;
  r.exporter = 1;
  r.rows.resize(3);
  for (std::size_t k = 0; k < 3; ++k) r.rows[k].tariff = 0.1 * double(k);
  const auto changes = detect_regime_changes(r);
  REQUIRE(changes.size() == 2);
  CHECK(changes[0].unknown);
  CHECK(changes[1].unknown);
  CHECK(write_results(SweepResult{}, OutputFormat::csv) ==
        "tariff_value,pattern_id,convergence_status\n");
}

TEST_CASE("refinement brackets the boundary") {
  SweepOptions o;
  o.refine = true;
  const SweepResult r = tariff_sweep(wine(), USA, EU, linear_grid(0.0, 0.3, 7), o);
  REQUIRE(r.regime_changes.size() == 1);
  REQUIRE(r.regime_changes[0].refined);
  const auto [lo, hi] = *r.regime_changes[0].refined;
  CHECK(hi - lo <= 1e-6);
  CHECK(lo >= 0.0);
  CHECK(hi <= 1e-6);  // any positive tariff already breaks the EU->USA tie
}
