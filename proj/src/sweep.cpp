#include "tariffnet/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <thread>

#include "tariffnet/errors.hpp"
#include "tariffnet/netstruct.hpp"

namespace tariffnet {

std::string pattern_id(const TradePattern& pattern) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  auto mix = [&hash](std::uint64_t value) {
    for (int byte = 0; byte < 8; ++byte) {
      hash ^= (value >> (8 * byte)) & 0xffU;
      hash *= 0x100000001b3ULL;
    }
  };
  mix(pattern.countries());
  for (const Link& l : pattern.links()) {
    mix(l.producer);
    mix(l.market);
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::vector<double> linear_grid(double from, double to, std::size_t steps) {
  if (steps == 0) throw DomainError("a grid needs at least one step");
  if (steps == 1) return {from};
  std::vector<double> grid(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    grid[k] = from + (to - from) * static_cast<double>(k) / static_cast<double>(steps - 1);
  }
  grid.back() = to;
  return grid;
}

namespace {

SweepRow solve_row(Economy economy, std::size_t importer, std::size_t exporter,
                   double tariff, const SolverOptions& options) {
  SweepRow row;
  row.tariff = tariff;
  economy.tariffs.set(importer, exporter, tariff);
  try {
    Equilibrium eq = solve_with_fallback(economy, options);
    row.welfare = welfare_report(economy, eq);
    row.pattern_id = pattern_id(eq.support);
    row.equilibrium = std::move(eq);
    row.converged = true;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

void refine_boundary(const Economy& economy, const SweepResult& result,
                     RegimeChange& change, const SweepOptions& options) {
  const SweepRow& left = result.rows[change.left_row];
  double lo = change.tariff_lo;
  double hi = change.tariff_hi;
  while (hi - lo > options.refine_tolerance) {
    const double mid = 0.5 * (lo + hi);
    const SweepRow probe =
        solve_row(economy, result.importer, result.exporter, mid, options.solver);
    if (!probe.converged) return;
    (probe.pattern_id == left.pattern_id ? lo : hi) = mid;
  }
  change.refined = std::make_pair(lo, hi);
}

}  // namespace

SweepResult tariff_sweep(const Economy& economy, std::size_t importer,
                         std::size_t exporter, const std::vector<double>& grid,
                         const SweepOptions& options) {
  require_valid(economy);
  validate_options(options.solver);
  const std::size_t n = economy.size();
  if (importer >= n || exporter >= n || importer == exporter) {
    throw DomainError("sweep axis needs two distinct countries of the economy");
  }
  if (grid.empty()) throw DomainError("sweep grid is empty");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!(grid[k] >= 0.0)) throw DomainError("sweep grid values must be nonnegative");
    if (k > 0 && !(grid[k] > grid[k - 1])) {
      throw DomainError("sweep grid must be strictly ascending");
    }
  }

  SweepResult result;
  result.importer = importer;
  result.exporter = exporter;
  for (const Country& c : economy.countries) result.country_ids.push_back(c.id);
  result.rows.resize(grid.size());

  if (options.warm_start) {
    SolverOptions solver = options.solver;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      result.rows[k] = solve_row(economy, importer, exporter, grid[k], solver);
      if (result.rows[k].converged) {
        solver.initial_prices = result.rows[k].equilibrium->consumer_prices;
      }
    }
  } else {
    const std::size_t workers = std::clamp<std::size_t>(options.workers, 1, grid.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t k = next++; k < grid.size(); k = next++) {
        result.rows[k] = solve_row(economy, importer, exporter, grid[k], options.solver);
      }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
  }

  result.regime_changes = detect_regime_changes(result);
  if (options.refine) {
    for (RegimeChange& change : result.regime_changes) {
      if (!change.unknown) refine_boundary(economy, result, change, options);
    }
  }
  return result;
}

std::vector<RegimeChange> detect_regime_changes(const SweepResult& result) {
  std::vector<RegimeChange> changes;
  for (std::size_t k = 0; k + 1 < result.rows.size(); ++k) {
    const SweepRow& a = result.rows[k];
    const SweepRow& b = result.rows[k + 1];
    RegimeChange change;
    change.left_row = k;
    change.tariff_lo = a.tariff;
    change.tariff_hi = b.tariff;
    if (!a.converged || !b.converged) {
      change.unknown = true;
      changes.push_back(std::move(change));
      continue;
    }
    if (a.pattern_id == b.pattern_id) continue;
    const PatternDiff diff = pattern_diff(a.equilibrium->support, b.equilibrium->support);
    change.removed = diff.removed;
    change.added = diff.added;
    for (std::size_t i = 0; i < a.welfare->countries.size(); ++i) {
      change.welfare_jump.push_back(b.welfare->countries[i].total -
                                    a.welfare->countries[i].total);
    }
    changes.push_back(std::move(change));
  }
  return changes;
}

}  // namespace tariffnet
