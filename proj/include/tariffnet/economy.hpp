#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tariffnet/curve.hpp"
#include "tariffnet/matrix.hpp"

namespace tariffnet {

struct Country {
  std::string id;
  std::string name;
  Curve supply;
  Curve demand;

  bool operator==(const Country&) const = default;
};

/// Ad valorem rates; rate(i, j) is the tariff importer i levies on goods
/// produced by exporter j.
class TariffMatrix {
 public:
  TariffMatrix() = default;
  explicit TariffMatrix(std::size_t n) : rates_(n, n, 0.0) {}
  explicit TariffMatrix(Matrix<double> rates) : rates_(std::move(rates)) {}

  std::size_t rows() const { return rates_.rows(); }
  std::size_t cols() const { return rates_.cols(); }

  double rate(std::size_t importer, std::size_t exporter) const {
    return rates_(importer, exporter);
  }
  void set(std::size_t importer, std::size_t exporter, double value) {
    rates_(importer, exporter) = value;
  }
  /// 1 + t(importer, exporter).
  double markup(std::size_t importer, std::size_t exporter) const {
    return 1.0 + rates_(importer, exporter);
  }

  const Matrix<double>& matrix() const { return rates_; }

  bool operator==(const TariffMatrix&) const = default;

 private:
  Matrix<double> rates_;
};

struct Economy {
  std::vector<Country> countries;
  TariffMatrix tariffs;

  std::size_t size() const { return countries.size(); }
  std::optional<std::size_t> index_of(std::string_view id) const;

  bool operator==(const Economy&) const = default;
};

struct ValidationIssue {
  std::string path;     // e.g. "tariffs[2][0]"
  std::string message;  // e.g. "negative tariff"
};

/// Every violated invariant of the economy; empty means valid.
std::vector<ValidationIssue> validate_economy(const Economy& economy);

/// Throws DomainError listing the issues when the economy is invalid.
void require_valid(const Economy& economy);

/// Price at which a country's own supply meets its own demand; d(0) when
/// s(0) >= d(0).
double autarky_price(const Country& country);

}  // namespace tariffnet
