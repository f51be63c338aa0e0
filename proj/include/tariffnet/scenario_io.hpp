#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tariffnet/economy.hpp"
#include "tariffnet/equilibrium.hpp"
#include "tariffnet/pattern.hpp"
#include "tariffnet/sweep.hpp"
#include "tariffnet/welfare.hpp"

namespace tariffnet {

struct Scenario {
  std::string name;
  std::string description;
  Economy economy;
  std::optional<TradePattern> fixed_network;
  SolverOptions options;

  bool operator==(const Scenario&) const = default;
};

/// Strict parse of a JSON scenario document. Throws ParseError whose path
/// names the offending field (unknown keys are errors too).
Scenario parse_scenario(std::string_view text);

Scenario load_scenario(const std::filesystem::path& path);

/// Canonical JSON form; parse_scenario(write_scenario(s)) == s.
std::string write_scenario(const Scenario& scenario);

/// Flow matrix file: {"flows": n x n array indexed [market][producer]},
/// optionally with "countries": [ids] to pin the ordering.
FlowMatrix parse_flows(std::string_view text, const Economy& economy);

FlowMatrix load_flows(const std::filesystem::path& path, const Economy& economy);

enum class OutputFormat { table, json, csv };

std::optional<OutputFormat> parse_format(std::string_view text);

std::string write_results(const Economy& economy, const Equilibrium& eq, OutputFormat format);
std::string write_results(const Economy& economy, const WelfareReport& report,
                          OutputFormat format);
std::string write_results(const SweepResult& result, OutputFormat format);

/// Shortest decimal that reads back to exactly `value`.
std::string format_exact(double value);

/// `value` with 6 significant digits.
std::string format_short(double value);

}  // namespace tariffnet
