#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tariffnet/economy.hpp"
#include "tariffnet/matrix.hpp"
#include "tariffnet/pattern.hpp"

namespace tariffnet {

enum class SolveMethod { fixed_network, tatonnement, enumerate };

std::string to_string(SolveMethod method);
std::optional<SolveMethod> parse_method(std::string_view text);

struct SolverOptions {
  /// Relative tolerance on clearing residuals, excess demand and selection
  /// slack.
  double price_tolerance = 1e-6;
  /// Relative band below the best effective revenue that still counts as a
  /// best destination.
  double tie_tolerance = 1e-7;
  /// Flows at or below this are treated as zero.
  double flow_tolerance = 1e-9;
  /// Initial step of the multiplicative price update, in (0, 1].
  double damping = 0.5;
  long max_iterations = 100000;
  SolveMethod method = SolveMethod::tatonnement;
  /// Fixed-network solves in exact rational arithmetic.
  bool exact = false;
  /// Starting consumer prices for the tatonnement (warm start); autarky
  /// prices when absent.
  std::optional<std::vector<double>> initial_prices;

  bool operator==(const SolverOptions&) const = default;
};

/// Throws DomainError on non-positive tolerances or damping outside (0, 1].
void validate_options(const SolverOptions& options);

struct Diagnostics {
  double max_clearing_residual = 0.0;
  double max_selection_slack = 0.0;
  long iterations = 0;
  /// More than one flow matrix supports these prices.
  bool multiple_flows = false;
  std::string method;
};

struct Equilibrium {
  std::vector<double> consumer_prices;
  std::vector<double> producer_prices;
  FlowMatrix flows;
  /// Links with flow above the flow tolerance.
  TradePattern pattern;
  /// Links from producing firms to their best destinations (the links any
  /// equilibrium flow at these prices may use).
  TradePattern support;
  Diagnostics diagnostics;

  std::size_t size() const { return consumer_prices.size(); }
  double consumption(std::size_t market) const;
  double production(std::size_t producer) const;
};

struct RevenueProfile {
  std::vector<double> revenue;
  double max = 0.0;
  std::vector<std::size_t> argmax;
};

/// Net revenue per unit a producer earns in every market: p_c[h] / (1 +
/// t[h][producer]), with the set of destinations within `tie_tolerance`
/// (relative) of the best.
RevenueProfile effective_revenue(std::span<const double> consumer_prices,
                                 const TariffMatrix& tariffs, std::size_t producer,
                                 double tie_tolerance = 1e-7);

/// One destination of a best-response column.
struct ResponseEntry {
  double quantity = 0.0;   // lower end of the admissible range
  double upper = 0.0;      // upper end (equals quantity unless indifferent)
  bool indifferent = false;
};

/// The firm best response behind the existence argument: ship nothing where
/// effective revenue is below the producer price, the cap q-bar where it is
/// above, anything in [0, q-bar] where they tie.
std::vector<ResponseEntry> best_response(const Economy& economy,
                                         std::span<const double> consumer_prices,
                                         double producer_price, std::size_t producer,
                                         double tie_tolerance = 1e-7);

/// Solves the clearing and producer-price equations with flows restricted to
/// exactly `pattern`. Selection is not enforced; see verify_selection.
/// Throws IndeterminatePattern on a singular system and InfeasiblePattern on
/// a negative flow.
Equilibrium solve_fixed_network(const Economy& economy, const TradePattern& pattern,
                                const SolverOptions& options = {});

struct SelectionViolation {
  enum class Kind {
    better_destination,     // a market pays more than the producer price
    suboptimal_destination, // an active link that is not a best destination
    price_above_revenue,    // producer price exceeds every market's revenue
    idle_but_profitable,    // zero production although revenue beats s(0)
  };
  Kind kind = Kind::better_destination;
  std::size_t producer = 0;
  std::optional<std::size_t> destination;
  double gap = 0.0;
};

std::string to_string(SelectionViolation::Kind kind);

/// Checks that every producer ships only to best destinations at a price
/// equal to the best effective revenue (or, if idle, that nothing beats its
/// cost at zero output).
std::vector<SelectionViolation> verify_selection(const Economy& economy,
                                                 const Equilibrium& eq,
                                                 const SolverOptions& options = {});

/// Completes a consumer price vector into an equilibrium candidate: producer
/// prices and supplies from best revenues, demands from the demand curves,
/// canonical flows on the best-destination support. nullopt when no flow
/// clears the markets at these prices.
std::optional<Equilibrium> equilibrium_at_prices(const Economy& economy,
                                                 std::vector<double> consumer_prices,
                                                 const SolverOptions& options = {});

/// Prices implied by a given flow matrix: p_c[i] = d_i(consumption) and
/// p_f[j] = s_j(production). Support is the set of positive-flow links, so
/// verify_selection on the result checks the flows as an equilibrium claim.
Equilibrium equilibrium_from_flows(const Economy& economy, const FlowMatrix& flows,
                                   const SolverOptions& options = {});

/// Full solver: damped tatonnement on consumer prices with periodic
/// active-set refinement. Throws ConvergenceFailure at the iteration cap.
Equilibrium solve_equilibrium(const Economy& economy, const SolverOptions& options = {});

/// Maximum economy size accepted by enumerate_equilibria.
inline constexpr std::size_t kEnumerationLimit = 4;

/// Exhaustive oracle over destination sets; every distinct equilibrium price
/// vector, sorted lexicographically.
std::vector<Equilibrium> enumerate_equilibria(const Economy& economy,
                                              const SolverOptions& options = {});

/// Enumeration for small economies, otherwise tatonnement; used when the
/// caller has no preference.
Equilibrium solve_with_fallback(const Economy& economy, const SolverOptions& options = {});

}  // namespace tariffnet
