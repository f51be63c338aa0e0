#include "tariffnet/economy.hpp"

#include <cmath>
#include <set>

#include "tariffnet/errors.hpp"

namespace tariffnet {

std::optional<std::size_t> Economy::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < countries.size(); ++i) {
    if (countries[i].id == id) return i;
  }
  return std::nullopt;
}

std::vector<ValidationIssue> validate_economy(const Economy& economy) {
  std::vector<ValidationIssue> issues;
  const std::size_t n = economy.size();
  if (n == 0) issues.push_back({"countries", "economy has no countries"});

  std::set<std::string> seen;
  for (std::size_t i = 0; i < n; ++i) {
    const Country& c = economy.countries[i];
    const std::string base = "countries[" + std::to_string(i) + "]";
    if (c.id.empty()) issues.push_back({base + ".id", "empty country id"});
    if (!seen.insert(c.id).second) {
      issues.push_back({base + ".id", "duplicate country id '" + c.id + "'"});
    }
    if (c.supply.kind() != CurveKind::supply) {
      issues.push_back({base + ".supply", "curve is not a supply curve"});
    }
    if (c.demand.kind() != CurveKind::demand) {
      issues.push_back({base + ".demand", "curve is not a demand curve"});
    }
    for (const auto& v : c.supply.violations()) issues.push_back({base + ".supply", v});
    for (const auto& v : c.demand.violations()) issues.push_back({base + ".demand", v});
  }

  const auto& t = economy.tariffs;
  if (t.rows() != n || t.cols() != n) {
    issues.push_back({"tariffs", "dimension mismatch: " + std::to_string(t.rows()) +
                                     "x" + std::to_string(t.cols()) + " tariffs for " +
                                     std::to_string(n) + " countries"});
    return issues;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::string path =
          "tariffs[" + std::to_string(i) + "][" + std::to_string(j) + "]";
      const double r = t.rate(i, j);
      if (!std::isfinite(r)) {
        issues.push_back({path, "non-finite tariff"});
      } else if (r < 0.0) {
        issues.push_back({path, "negative tariff"});
      } else if (i == j && r != 0.0) {
        issues.push_back({path, "nonzero diagonal"});
      }
    }
  }
  return issues;
}

void require_valid(const Economy& economy) {
  const auto issues = validate_economy(economy);
  if (issues.empty()) return;
  std::string msg = "invalid economy:";
  for (const auto& issue : issues) msg += " [" + issue.path + "] " + issue.message + ";";
  throw DomainError(msg);
}

double autarky_price(const Country& country) {
  const double q = cap_quantity(country.supply, country.demand);
  return country.demand.eval(q);
}

}  // namespace tariffnet
