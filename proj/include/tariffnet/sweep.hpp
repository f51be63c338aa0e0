#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tariffnet/economy.hpp"
#include "tariffnet/equilibrium.hpp"
#include "tariffnet/pattern.hpp"
#include "tariffnet/welfare.hpp"

namespace tariffnet {

/// Stable identifier of a trade network: FNV-1a over the sorted link list,
/// as 16 hex digits. Equal patterns give equal ids across runs and builds.
std::string pattern_id(const TradePattern& pattern);

/// `steps` evenly spaced values from `from` to `to` inclusive.
std::vector<double> linear_grid(double from, double to, std::size_t steps);

struct SweepRow {
  double tariff = 0.0;
  bool converged = false;
  std::string error;  // set when the solve failed
  std::optional<Equilibrium> equilibrium;
  std::optional<WelfareReport> welfare;
  /// Id of the equilibrium's best-destination network (empty if failed).
  std::string pattern_id;
};

struct RegimeChange {
  std::size_t left_row = 0;  // rows[left_row] and rows[left_row + 1]
  double tariff_lo = 0.0;
  double tariff_hi = 0.0;
  /// A neighbouring solve failed, so nothing is known about this interval.
  bool unknown = false;
  std::vector<Link> removed;
  std::vector<Link> added;
  /// Total welfare right minus left, per country.
  std::vector<double> welfare_jump;
  /// Narrowed boundary bracket when refinement was requested.
  std::optional<std::pair<double, double>> refined;
};

struct SweepResult {
  std::vector<std::string> country_ids;
  std::size_t importer = 0;
  std::size_t exporter = 0;
  std::vector<SweepRow> rows;
  std::vector<RegimeChange> regime_changes;
};

struct SweepOptions {
  SolverOptions solver;
  std::size_t workers = 1;
  /// Seed each solve with the previous row's prices (forces sequential
  /// evaluation).
  bool warm_start = false;
  /// Bisect each regime boundary down to `refine_tolerance` in tariff units.
  bool refine = false;
  double refine_tolerance = 1e-6;
};

/// Re-solves the economy at t[importer][exporter] = each grid value.
/// Failed solves are kept as unconverged rows.
SweepResult tariff_sweep(const Economy& economy, std::size_t importer,
                         std::size_t exporter, const std::vector<double>& grid,
                         const SweepOptions& options = {});

/// One entry per adjacent pair of rows whose networks differ, or where
/// either row failed (flagged unknown).
std::vector<RegimeChange> detect_regime_changes(const SweepResult& result);

}  // namespace tariffnet
