#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tariffnet {

/// Bad argument to a model operation (negative quantity, reversed bounds,
/// non-square matrix, invalid sweep axis, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The linear system of a fixed trade network has no unique solution.
class IndeterminatePattern : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A fixed trade network solves only with a negative flow on some link.
class InfeasiblePattern : public std::runtime_error {
 public:
  InfeasiblePattern(const std::string& what, std::size_t producer,
                    std::size_t market, double flow)
      : std::runtime_error(what),
        producer(producer),
        market(market),
        flow(flow) {}

  std::size_t producer;
  std::size_t market;
  double flow;
};

/// Margins admit no nonnegative flow on the given support.
class InfeasibleFlows : public std::runtime_error {
 public:
  InfeasibleFlows(const std::string& what, std::vector<std::size_t> producers)
      : std::runtime_error(what), producers(std::move(producers)) {}

  std::vector<std::size_t> producers;
};

/// Iterative solver gave up before meeting its tolerances.
class ConvergenceFailure : public std::runtime_error {
 public:
  ConvergenceFailure(const std::string& what, double clearing_residual,
                     double selection_slack, long iterations)
      : std::runtime_error(what),
        clearing_residual(clearing_residual),
        selection_slack(selection_slack),
        iterations(iterations) {}

  double clearing_residual;
  double selection_slack;
  long iterations;
};

/// Scenario document problem; `path` points at the offending field
/// (e.g. "countries[1].supply.slope").
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string path, const std::string& message)
      : std::runtime_error(path.empty() ? message : path + ": " + message),
        path(std::move(path)) {}

  std::string path;
};

}  // namespace tariffnet
