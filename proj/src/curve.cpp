#include "tariffnet/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tariffnet/errors.hpp"

namespace tariffnet {
namespace {

constexpr double kMinSlope = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_nonnegative(double x, const char* what) {
  if (!(x >= 0.0)) {
    std::ostringstream msg;
    msg << what << " must be nonnegative, got " << x;
    throw DomainError(msg.str());
  }
}

}  // namespace

Curve Curve::linear(CurveKind kind, double intercept, double slope) {
  Curve c;
  c.kind_ = kind;
  c.points_ = {{0.0, intercept}};
  c.terminal_slope_ = kind == CurveKind::supply ? slope : -slope;
  return c;
}

Curve Curve::piecewise(CurveKind kind, std::vector<Breakpoint> points,
                       std::optional<double> terminal_slope) {
  Curve c;
  c.kind_ = kind;
  c.points_ = std::move(points);
  if (terminal_slope) {
    c.terminal_slope_ = *terminal_slope;
  } else if (c.points_.size() >= 2) {
    const auto& a = c.points_[c.points_.size() - 2];
    const auto& b = c.points_.back();
    c.terminal_slope_ = (b.value - a.value) / (b.quantity - a.quantity);
  } else {
    c.terminal_slope_ = std::numeric_limits<double>::quiet_NaN();
  }
  return c;
}

double Curve::segment_slope(std::size_t k) const {
  if (k + 1 >= points_.size()) return terminal_slope_;
  return (points_[k + 1].value - points_[k].value) /
         (points_[k + 1].quantity - points_[k].quantity);
}

double Curve::raw_eval(double q) const {
  std::size_t k = 0;
  while (k + 1 < points_.size() && points_[k + 1].quantity <= q) ++k;
  return points_[k].value + segment_slope(k) * (q - points_[k].quantity);
}

double Curve::eval(double q) const {
  require_nonnegative(q, "quantity");
  const double v = raw_eval(q);
  return kind_ == CurveKind::demand ? std::max(0.0, v) : v;
}

double Curve::choke_quantity() const {
  if (kind_ == CurveKind::supply) return kInf;
  for (std::size_t k = 0; k < points_.size(); ++k) {
    const double v = points_[k].value;
    if (v <= 0.0) return points_[k].quantity;
    const double next = k + 1 < points_.size()
                            ? points_[k + 1].value
                            : (terminal_slope_ < 0.0 ? -kInf : kInf);
    if (next <= 0.0) return points_[k].quantity - v / segment_slope(k);
  }
  return kInf;
}

double Curve::inverse(double p) const {
  require_nonnegative(p, "price");
  if (kind_ == CurveKind::demand) {
    if (p >= intercept()) return 0.0;
    if (p == 0.0) return choke_quantity();
    for (std::size_t k = 0; k < points_.size(); ++k) {
      const double next = k + 1 < points_.size() ? points_[k + 1].value : -kInf;
      if (p > next) {
        return points_[k].quantity + (p - points_[k].value) / segment_slope(k);
      }
    }
    return kInf;
  }
  if (p <= intercept()) return 0.0;
  for (std::size_t k = 0; k < points_.size(); ++k) {
    const double next = k + 1 < points_.size() ? points_[k + 1].value : kInf;
    if (p < next) {
      return points_[k].quantity + (p - points_[k].value) / segment_slope(k);
    }
  }
  return kInf;
}

Curve::InverseForm Curve::inverse_form(double p) const {
  if (kind_ == CurveKind::demand) {
    if (p >= intercept()) return {0.0, 0.0};
    std::size_t k = 0;
    while (k + 1 < points_.size() && points_[k + 1].value > std::max(p, 0.0)) ++k;
    const double slope = segment_slope(k);
    return {points_[k].quantity - points_[k].value / slope, 1.0 / slope};
  }
  if (p <= intercept()) return {0.0, 0.0};
  std::size_t k = 0;
  while (k + 1 < points_.size() && points_[k + 1].value <= p) ++k;
  const double slope = segment_slope(k);
  return {points_[k].quantity - points_[k].value / slope, 1.0 / slope};
}

std::vector<double> Curve::price_breakpoints() const {
  std::vector<double> out;
  for (const auto& bp : points_) {
    if (kind_ == CurveKind::supply || bp.value > 0.0) out.push_back(bp.value);
  }
  if (kind_ == CurveKind::demand) out.push_back(0.0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double Curve::integral(double q_lo, double q_hi) const {
  require_nonnegative(q_lo, "lower bound");
  if (!(q_hi >= q_lo)) throw DomainError("integral bounds are reversed");
  if (q_hi == q_lo) return 0.0;

  std::vector<double> nodes{q_lo, q_hi};
  for (const auto& bp : points_) {
    if (bp.quantity > q_lo && bp.quantity < q_hi) nodes.push_back(bp.quantity);
  }
  if (kind_ == CurveKind::demand) {
    const double choke = choke_quantity();
    if (choke > q_lo && choke < q_hi) nodes.push_back(choke);
  }
  std::sort(nodes.begin(), nodes.end());

  double area = 0.0;
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    const double width = nodes[k + 1] - nodes[k];
    area += 0.5 * width * (eval(nodes[k]) + eval(nodes[k + 1]));
  }
  return area;
}

std::vector<std::string> Curve::violations() const {
  std::vector<std::string> out;
  const char* label = kind_ == CurveKind::supply ? "supply" : "demand";
  auto add = [&](const std::string& what) {
    out.push_back(std::string(label) + " curve: " + what);
  };

  if (points_.empty()) {
    add("no breakpoints");
    return out;
  }
  if (points_.front().quantity != 0.0) add("first breakpoint must be at quantity 0");
  for (std::size_t k = 0; k < points_.size(); ++k) {
    if (!std::isfinite(points_[k].quantity) || !std::isfinite(points_[k].value)) {
      add("non-finite breakpoint");
      return out;
    }
    if (points_[k].quantity < 0.0) add("negative breakpoint quantity");
    if (k > 0 && !(points_[k].quantity > points_[k - 1].quantity)) {
      add("breakpoint quantities not strictly increasing");
      return out;
    }
  }
  if (!std::isfinite(terminal_slope_)) {
    add("missing or non-finite terminal slope");
    return out;
  }

  if (kind_ == CurveKind::supply) {
    if (intercept() < 0.0) add("negative value at zero quantity");
    for (std::size_t k = 0; k < points_.size(); ++k) {
      if (!(segment_slope(k) >= kMinSlope)) {
        add("not strictly increasing");
        break;
      }
    }
  } else {
    if (!(intercept() > 0.0)) add("value at zero quantity must be positive");
    for (std::size_t k = 0; k < points_.size(); ++k) {
      if (points_[k].value <= 0.0) break;
      if (!(segment_slope(k) <= -kMinSlope)) {
        add("not strictly decreasing while positive");
        break;
      }
    }
  }
  return out;
}

double cap_quantity(const Curve& supplier, const Curve& market_demand) {
  const double s0 = supplier.intercept();
  const double d0 = market_demand.intercept();
  if (s0 >= d0) return 0.0;

  std::vector<double> nodes{0.0};
  for (const auto& bp : supplier.breakpoints()) nodes.push_back(bp.quantity);
  for (const auto& bp : market_demand.breakpoints()) nodes.push_back(bp.quantity);
  const double choke = market_demand.choke_quantity();
  if (std::isfinite(choke)) nodes.push_back(choke);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  auto gap = [&](double q) { return market_demand.eval(q) - supplier.eval(q); };
  // gap is linear between consecutive nodes and past the last one.
  double lo = 0.0;
  double gap_lo = gap(0.0);
  for (std::size_t k = 1; k < nodes.size(); ++k) {
    const double g = gap(nodes[k]);
    if (g <= 0.0) return lo + gap_lo * (nodes[k] - lo) / (gap_lo - g);
    lo = nodes[k];
    gap_lo = g;
  }
  const double probe = lo + 1.0;
  const double slope = gap(probe) - gap_lo;
  if (!(slope < 0.0)) return kInf;
  return lo - gap_lo / slope;
}

}  // namespace tariffnet
