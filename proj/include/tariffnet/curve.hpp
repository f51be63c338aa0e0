#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tariffnet {

enum class CurveKind { supply, demand };

struct Breakpoint {
  double quantity = 0.0;
  double value = 0.0;

  bool operator==(const Breakpoint&) const = default;
};

/// One linear stretch of a curve over quantity: value(q) = value + slope *
/// (q - start) for q in [start, next piece's start).
template <typename T>
struct LinearPiece {
  T start;
  T value;
  T slope;
};

/// Indirect supply or demand function, piecewise linear in quantity.
///
/// Breakpoints start at q = 0 and are joined by straight segments; past the
/// last breakpoint the curve continues with `terminal_slope`. Demand is
/// clamped to exactly 0 beyond its choke quantity. Construction does not
/// validate; call violations() (or validate_economy) before solving.
class Curve {
 public:
  Curve() = default;

  /// intercept + slope*q for supply, intercept - slope*q for demand. `slope`
  /// is the magnitude and must be positive for a valid curve.
  static Curve linear(CurveKind kind, double intercept, double slope);

  /// When `terminal_slope` is absent the last segment's slope is reused.
  static Curve piecewise(CurveKind kind, std::vector<Breakpoint> points,
                         std::optional<double> terminal_slope = std::nullopt);

  CurveKind kind() const { return kind_; }
  std::span<const Breakpoint> breakpoints() const { return points_; }
  /// Signed slope beyond the last breakpoint.
  double terminal_slope() const { return terminal_slope_; }
  bool is_linear() const { return points_.size() == 1; }
  /// Value at q = 0 (s(0) or d(0)).
  double intercept() const { return points_.front().value; }

  double eval(double q) const;
  double inverse(double p) const;
  double integral(double q_lo, double q_hi) const;

  /// Demand: smallest q with d(q) = 0. Supply: +infinity.
  double choke_quantity() const;

  /// Local linear form of the inverse around price p: inverse(x) ~ alpha +
  /// beta * x on the price piece containing p (flat pieces give beta = 0).
  struct InverseForm {
    double alpha;
    double beta;
  };
  InverseForm inverse_form(double p) const;

  /// Sorted price values at which the inverse changes slope (curve kinks,
  /// the intercept, and 0 for demand).
  std::vector<double> price_breakpoints() const;

  /// Invariant violations, empty when the curve is valid.
  std::vector<std::string> violations() const;

  /// Linear pieces covering [0, inf), built with `convert` applied to every
  /// stored coefficient so exact scalar types stay exact. For demand the
  /// last piece is the clamped zero tail.
  template <typename T, typename Convert>
  std::vector<LinearPiece<T>> pieces(Convert convert) const;

  bool operator==(const Curve&) const = default;

 private:
  double raw_eval(double q) const;
  double segment_slope(std::size_t k) const;

  CurveKind kind_ = CurveKind::supply;
  std::vector<Breakpoint> points_{{0.0, 0.0}};
  double terminal_slope_ = 1.0;
};

/// The cap q-bar for a (supplier, market) pair: the quantity at which the
/// supplier's cost meets the market's demand, or 0 when s(0) >= d(0).
double cap_quantity(const Curve& supplier, const Curve& market_demand);

template <typename T, typename Convert>
std::vector<LinearPiece<T>> Curve::pieces(Convert convert) const {
  std::vector<LinearPiece<T>> out;
  const std::size_t count = points_.size();
  for (std::size_t k = 0; k < count; ++k) {
    T start = convert(points_[k].quantity);
    T value = convert(points_[k].value);
    T slope = k + 1 < count
                  ? (convert(points_[k + 1].value) - value) /
                        (convert(points_[k + 1].quantity) - start)
                  : convert(terminal_slope_);
    if (kind_ == CurveKind::demand) {
      if (!(value > T(0))) {
        out.push_back({start, T(0), T(0)});
        return out;
      }
      T end_value = k + 1 < count ? convert(points_[k + 1].value) : T(-1);
      if (!(end_value > T(0)) && slope < T(0)) {
        out.push_back({start, value, slope});
        out.push_back({start - value / slope, T(0), T(0)});
        return out;
      }
    }
    out.push_back({start, value, slope});
  }
  return out;
}

}  // namespace tariffnet
