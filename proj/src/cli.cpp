#include "tariffnet/cli.hpp"

#include <fstream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "tariffnet/errors.hpp"
#include "tariffnet/netstruct.hpp"
#include "tariffnet/scenario_io.hpp"
#include "tariffnet/sweep.hpp"
#include "tariffnet/welfare.hpp"

namespace tariffnet {
namespace {

struct Flags {
  std::string scenario;
  std::string method;
  std::string format;  // empty: the command's default
  std::string output;
  std::string flows;
  bool ignore_fixed_network = false;
  bool exact = false;

  // sweep
  std::string importer;
  std::string exporter;
  double from = 0.0;
  double to = 0.0;
  std::size_t steps = 11;
  std::size_t workers = 1;
  bool refine = false;
  bool warm_start = false;
};

/// Input problem detected after flag parsing (unknown id, impossible combo).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("scenario", f.scenario, "Scenario JSON file")->required();
  cmd->add_option("--format", f.format, "Output format")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  cmd->add_option("--output,-o", f.output, "Write results to this file instead of stdout");
  cmd->add_option("--method", f.method, "Solver: fixed_network, tatonnement or enumerate")
      ->check(CLI::IsMember({"fixed_network", "tatonnement", "enumerate"}));
  cmd->add_flag("--exact", f.exact, "Solve fixed networks in exact rational arithmetic");
}

void add_network_toggle(CLI::App* cmd, Flags& f) {
  cmd->add_flag("--ignore-fixed-network", f.ignore_fixed_network,
                "Run the full solver even when the scenario fixes the network");
}

OutputFormat output_format(const Flags& f) { return *parse_format(f.format); }

SolverOptions options_for(const Scenario& s, const Flags& f) {
  SolverOptions o = s.options;
  if (f.exact) o.exact = true;
  if (!f.method.empty()) o.method = *parse_method(f.method);
  return o;
}

Equilibrium solve_scenario(const Scenario& s, const Flags& f) {
  const SolverOptions o = options_for(s, f);
  const bool use_fixed = s.fixed_network && !f.ignore_fixed_network;
  if (o.method == SolveMethod::fixed_network || (f.method.empty() && use_fixed)) {
    if (!s.fixed_network) {
      throw UsageError("--method fixed_network: the scenario has no fixed_network");
    }
    if (f.ignore_fixed_network) {
      throw UsageError("--method fixed_network conflicts with --ignore-fixed-network");
    }
    return solve_fixed_network(s.economy, *s.fixed_network, o);
  }
  if (!f.method.empty()) return solve_equilibrium(s.economy, o);
  return solve_with_fallback(s.economy, o);
}

void emit(const Flags& f, const std::string& text, std::ostream& out) {
  if (f.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(f.output, std::ios::binary);
  if (!file || !(file << text)) throw UsageError("--output: cannot write " + f.output);
}

std::size_t country_flag(const Economy& e, const std::string& flag, const std::string& id) {
  const auto index = e.index_of(id);
  if (!index) throw UsageError(flag + ": unknown country id '" + id + "'");
  return *index;
}

std::string violation_text(const Economy& e, const SelectionViolation& v) {
  std::string text = "producer " + e.countries[v.producer].id;
  if (v.destination) text += ", destination " + e.countries[*v.destination].id;
  text += ", gap " + format_short(v.gap) + " (" + to_string(v.kind) + ")";
  return text;
}

int cmd_solve(const Flags& f, std::ostream& out) {
  const Scenario s = load_scenario(f.scenario);
  const Equilibrium eq = solve_scenario(s, f);
  emit(f, write_results(s.economy, eq, output_format(f)), out);
  return kExitOk;
}

int cmd_welfare(const Flags& f, std::ostream& out) {
  const Scenario s = load_scenario(f.scenario);
  const Equilibrium eq = solve_scenario(s, f);
  emit(f, write_results(s.economy, welfare_report(s.economy, eq), output_format(f)), out);
  return kExitOk;
}

int cmd_sweep(const Flags& f, std::ostream& out, std::ostream& err) {
  const Scenario s = load_scenario(f.scenario);
  if (f.method == "fixed_network") {
    throw UsageError("--method: sweeps need a full solver (tatonnement or enumerate)");
  }
  SweepOptions options;
  options.solver = options_for(s, f);
  if (options.solver.method == SolveMethod::fixed_network) {
    options.solver.method = SolveMethod::tatonnement;
  }
  options.workers = f.workers;
  options.refine = f.refine;
  options.warm_start = f.warm_start;
  const std::size_t importer = country_flag(s.economy, "--importer", f.importer);
  const std::size_t exporter = country_flag(s.economy, "--exporter", f.exporter);
  if (importer == exporter) throw UsageError("--exporter: must differ from --importer");
  if (!(f.to >= f.from)) throw UsageError("--to: must not be below --from");

  const SweepResult result =
      tariff_sweep(s.economy, importer, exporter, linear_grid(f.from, f.to, f.steps), options);
  emit(f, write_results(result, output_format(f)), out);

  bool all_converged = true;
  for (const SweepRow& row : result.rows) {
    if (!row.converged) {
      all_converged = false;
      err << "tariff " << format_short(row.tariff) << ": " << row.error << "\n";
    }
  }
  if (output_format(f) != OutputFormat::table) {
    // Table output already lists the regime changes.
    for (const RegimeChange& c : result.regime_changes) {
      err << "regime change in (" << format_short(c.tariff_lo) << ", "
          << format_short(c.tariff_hi) << "]" << (c.unknown ? ": unknown" : "") << "\n";
    }
  }
  return all_converged ? kExitOk : kExitFailure;
}

int cmd_verify(const Flags& f, std::ostream& out) {
  const Scenario s = load_scenario(f.scenario);
  const SolverOptions o = options_for(s, f);
  const Equilibrium eq = f.flows.empty()
                             ? solve_scenario(s, f)
                             : equilibrium_from_flows(s.economy, load_flows(f.flows, s.economy), o);
  const auto violations = verify_selection(s.economy, eq, o);

  std::string text;
  switch (output_format(f)) {
    case OutputFormat::table:
      for (const auto& v : violations) text += violation_text(s.economy, v) + "\n";
      if (violations.empty()) text = "no violations\n";
      break;
    case OutputFormat::csv:
      text = "kind,producer,destination,gap\n";
      for (const auto& v : violations) {
        text += to_string(v.kind) + "," + s.economy.countries[v.producer].id + "," +
                (v.destination ? s.economy.countries[*v.destination].id : "") + "," +
                format_exact(v.gap) + "\n";
      }
      break;
    case OutputFormat::json: {
      nlohmann::json list = nlohmann::json::array();
      for (const auto& v : violations) {
        nlohmann::json entry = {{"kind", to_string(v.kind)},
                                {"producer", s.economy.countries[v.producer].id},
                                {"gap", v.gap}};
        if (v.destination) entry["destination"] = s.economy.countries[*v.destination].id;
        list.push_back(entry);
      }
      text = nlohmann::json{{"consistent", violations.empty()}, {"violations", list}}.dump(2) + "\n";
      break;
    }
  }
  emit(f, text, out);
  return violations.empty() ? kExitOk : kExitFailure;
}

int cmd_check_dag(const Flags& f, std::ostream& out) {
  const Scenario s = load_scenario(f.scenario);
  const SolverOptions o = options_for(s, f);
  const FlowMatrix flows =
      f.flows.empty() ? solve_scenario(s, f).flows : load_flows(f.flows, s.economy);
  const DagCheck check = is_dag(flows, o.flow_tolerance);
  const auto& countries = s.economy.countries;

  std::vector<std::string> order;
  if (check.acyclic) {
    for (std::size_t v : topological_order(TradeGraph::from_flows(flows, o.flow_tolerance))) {
      order.push_back(countries[v].id);
    }
  }
  std::vector<std::string> cycle;
  for (std::size_t v : check.cycle) cycle.push_back(countries[v].id);

  std::string text;
  if (output_format(f) == OutputFormat::json) {
    nlohmann::json doc = {{"acyclic", check.acyclic}};
    if (check.acyclic) {
      doc["topological_order"] = order;
    } else {
      doc["cycle"] = cycle;
    }
    text = doc.dump(2) + "\n";
  } else {
    auto join = [](const std::vector<std::string>& ids, const std::string& sep) {
      std::string s;
      for (const auto& id : ids) s += (s.empty() ? "" : sep) + id;
      return s;
    };
    text = check.acyclic ? "acyclic: yes\ntopological order: " + join(order, " ") + "\n"
                         : "acyclic: no\ncycle: " + join(cycle, " -> ") + "\n";
  }
  emit(f, text, out);
  return check.acyclic ? kExitOk : kExitFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equilibrium trade networks under ad valorem tariffs", "tariffnet"};
  app.require_subcommand(1);
  Flags f;

  auto* solve = app.add_subcommand("solve", "Solve a scenario and print the equilibrium");
  add_common(solve, f);
  add_network_toggle(solve, f);

  auto* welfare = app.add_subcommand("welfare", "Solve a scenario and print welfare by country");
  add_common(welfare, f);
  add_network_toggle(welfare, f);

  auto* sweep = app.add_subcommand("sweep", "Re-solve over a grid of one tariff rate");
  add_common(sweep, f);
  sweep->add_option("--importer", f.importer, "Importing country id")->required();
  sweep->add_option("--exporter", f.exporter, "Exporting country id")->required();
  sweep->add_option("--from", f.from, "First tariff value")->check(CLI::NonNegativeNumber);
  sweep->add_option("--to", f.to, "Last tariff value")->required()->check(CLI::NonNegativeNumber);
  sweep->add_option("--steps", f.steps, "Number of grid points")->check(CLI::PositiveNumber);
  sweep->add_option("--workers", f.workers, "Parallel solves")->check(CLI::PositiveNumber);
  sweep->add_flag("--refine", f.refine, "Bisect regime boundaries to 1e-6");
  sweep->add_flag("--warm-start", f.warm_start, "Seed each solve with the previous prices");

  auto* verify = app.add_subcommand(
      "verify", "Check destination selection for given flows (or the solved scenario)");
  add_common(verify, f);
  add_network_toggle(verify, f);
  verify->add_option("--flows", f.flows, "Flow matrix JSON file");

  auto* dag = app.add_subcommand("check-dag", "Test whether the trade graph is acyclic");
  add_common(dag, f);
  add_network_toggle(dag, f);
  dag->add_option("--flows", f.flows, "Flow matrix JSON file");

  std::vector<const char*> argv{"tariffnet"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }

  if (f.format.empty() && !sweep->parsed()) f.format = "table";
  try {
    if (solve->parsed()) return cmd_solve(f, out);
    if (welfare->parsed()) return cmd_welfare(f, out);
    if (sweep->parsed()) {
      if (f.format.empty()) f.format = "csv";
      return cmd_sweep(f, out, err);
    }
    if (verify->parsed()) return cmd_verify(f, out);
    return cmd_check_dag(f, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const ConvergenceFailure& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const IndeterminatePattern& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const InfeasiblePattern& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace tariffnet
