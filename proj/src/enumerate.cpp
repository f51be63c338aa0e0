#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tariffnet/equilibrium.hpp"
#include "tariffnet/errors.hpp"

namespace tariffnet {
namespace {

constexpr int kMaxPieceRounds = 30;
constexpr double kLinkMismatch = 1e-9;
constexpr double kSamePrices = 1e-12;

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::size_t find(std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
  std::vector<std::size_t> parent;
};

// Prices induced by one destination-set assignment. Unknowns are all 2n
// prices (consumer prices first, then producer prices). Rows: each link of a
// spanning forest ties p_c[i] = (1 + t[i][j]) p_f[j]; each connected
// component gets one aggregate clearing row with the curves linearized on
// their current price piece; isolated markets and producers sit at d(0) and
// s(0). Pieces are re-selected until stable; links outside the forest must
// hold at the solution.
std::optional<std::vector<double>> assignment_prices(const Economy& economy,
                                                     const std::vector<Link>& links) {
  const std::size_t n = economy.size();
  DisjointSets sets(2 * n);
  std::vector<Link> forest, extra;
  std::vector<bool> linked(2 * n, false);
  for (const Link& l : links) {
    linked[n + l.producer] = linked[l.market] = true;
    (sets.unite(l.market, n + l.producer) ? forest : extra).push_back(l);
  }

  std::vector<double> guess(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    guess[k] = guess[n + k] = autarky_price(economy.countries[k]);
  }

  std::vector<Curve::InverseForm> forms(2 * n, {0.0, 0.0});
  auto refresh_forms = [&](const std::vector<double>& x) {
    bool changed = false;
    for (std::size_t v = 0; v < 2 * n; ++v) {
      const Curve& c = v < n ? economy.countries[v].demand : economy.countries[v - n].supply;
      const auto f = c.inverse_form(x[v]);
      changed = changed || f.alpha != forms[v].alpha || f.beta != forms[v].beta;
      forms[v] = f;
    }
    return changed;
  };
  refresh_forms(guess);

  for (int round = 0; round < kMaxPieceRounds; ++round) {
    Matrix<double> a(2 * n, 2 * n, 0.0);
    std::vector<double> b(2 * n, 0.0);
    std::size_t row = 0;
    for (std::size_t v = 0; v < 2 * n; ++v) {
      if (linked[v]) continue;
      a(row, v) = 1.0;
      b[row] = v < n ? economy.countries[v].demand.intercept()
                     : economy.countries[v - n].supply.intercept();
      ++row;
    }
    for (const Link& l : forest) {
      a(row, l.market) = 1.0;
      a(row, n + l.producer) = -economy.tariffs.markup(l.market, l.producer);
      ++row;
    }
    for (std::size_t v = 0; v < 2 * n; ++v) {
      if (!linked[v] || sets.find(v) != v) continue;
      for (std::size_t u = 0; u < 2 * n; ++u) {
        if (!linked[u] || sets.find(u) != v) continue;
        const double sign = u < n ? 1.0 : -1.0;
        a(row, u) += sign * forms[u].beta;
        b[row] -= sign * forms[u].alpha;
      }
      ++row;
    }

    auto x = solve_linear<double>(std::move(a), std::move(b));
    if (!x) return std::nullopt;
    for (double p : *x) {
      if (!(p >= 0.0) || !std::isfinite(p)) return std::nullopt;
    }
    if (!refresh_forms(*x)) {
      for (const Link& l : extra) {
        const double lhs = (*x)[l.market];
        const double rhs = economy.tariffs.markup(l.market, l.producer) * (*x)[n + l.producer];
        if (std::abs(lhs - rhs) > kLinkMismatch * (1.0 + lhs)) return std::nullopt;
      }
      x->resize(n);
      return x;
    }
  }
  return std::nullopt;
}

bool same_prices(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::abs(a[k] - b[k]) > tol * (1.0 + std::abs(a[k]))) return false;
  }
  return true;
}

}  // namespace

std::vector<Equilibrium> enumerate_equilibria(const Economy& economy,
                                              const SolverOptions& options) {
  require_valid(economy);
  validate_options(options);
  const std::size_t n = economy.size();
  if (n > kEnumerationLimit) {
    throw DomainError("enumeration refused: " + std::to_string(n) +
                      " countries exceeds the limit of " +
                      std::to_string(kEnumerationLimit));
  }

  const double dedupe = 10.0 * options.tie_tolerance;
  std::vector<std::vector<double>> tested;
  std::vector<Equilibrium> found;
  const std::size_t total = std::size_t{1} << (n * n);
  for (std::size_t mask = 0; mask < total; ++mask) {
    std::vector<Link> links;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (std::size_t{1} << (j * n + i))) links.push_back({j, i});
      }
    }
    auto prices = assignment_prices(economy, links);
    if (!prices) continue;
    // Near-identical prices from different assignments are tested once; the
    // looser dedupe applies only to accepted equilibria, so a rejected
    // near-tie candidate cannot mask a valid one.
    const bool seen = std::any_of(tested.begin(), tested.end(), [&](const auto& p) {
      return same_prices(p, *prices, kSamePrices);
    });
    if (seen) continue;
    tested.push_back(*prices);

    auto eq = equilibrium_at_prices(economy, *prices, options);
    if (!eq || eq->diagnostics.max_clearing_residual > options.price_tolerance) continue;
    if (!verify_selection(economy, *eq, options).empty()) continue;
    const bool duplicate = std::any_of(found.begin(), found.end(), [&](const Equilibrium& f) {
      return same_prices(f.consumer_prices, eq->consumer_prices, dedupe);
    });
    if (duplicate) continue;
    eq->diagnostics.method = "enumerate";
    eq->diagnostics.iterations = static_cast<long>(mask);
    found.push_back(std::move(*eq));
  }

  std::sort(found.begin(), found.end(), [](const Equilibrium& a, const Equilibrium& b) {
    return a.consumer_prices < b.consumer_prices;
  });
  return found;
}

}  // namespace tariffnet
