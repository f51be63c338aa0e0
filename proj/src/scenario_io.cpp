#include "tariffnet/scenario_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tariffnet/errors.hpp"

namespace tariffnet {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------- parsing

std::string index_path(const std::string& base, std::size_t k) {
  return base + "[" + std::to_string(k) + "]";
}

std::string field_path(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

const json& require_object(const json& node, const std::string& path) {
  if (!node.is_object()) throw ParseError(path, "expected an object");
  return node;
}

const json& require_array(const json& node, const std::string& path) {
  if (!node.is_array()) throw ParseError(path, "expected an array");
  return node;
}

void reject_unknown(const json& object, const std::string& path,
                    std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : object.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* a) { return key == a; });
    if (!known) throw ParseError(field_path(path, key), "unknown field");
  }
}

const json& member(const json& object, const std::string& path, const char* key) {
  auto it = object.find(key);
  if (it == object.end()) throw ParseError(field_path(path, key), "missing field");
  return *it;
}

double number(const json& node, const std::string& path) {
  if (!node.is_number()) throw ParseError(path, "expected a number");
  return node.get<double>();
}

std::string text(const json& node, const std::string& path) {
  if (!node.is_string()) throw ParseError(path, "expected a string");
  return node.get<std::string>();
}

bool boolean(const json& node, const std::string& path) {
  if (!node.is_boolean()) throw ParseError(path, "expected true or false");
  return node.get<bool>();
}

Curve parse_curve(const json& node, const std::string& path, CurveKind kind) {
  require_object(node, path);
  const std::string type = text(member(node, path, "type"), field_path(path, "type"));
  if (type == "linear") {
    reject_unknown(node, path, {"type", "intercept", "slope"});
    const double a = number(member(node, path, "intercept"), field_path(path, "intercept"));
    const double b = number(member(node, path, "slope"), field_path(path, "slope"));
    if (!(b > 0.0)) {
      throw ParseError(field_path(path, "slope"), "slope magnitude must be positive");
    }
    return Curve::linear(kind, a, b);
  }
  if (type == "pwl") {
    reject_unknown(node, path, {"type", "points", "terminal_slope"});
    const std::string points_path = field_path(path, "points");
    const json& pts = require_array(member(node, path, "points"), points_path);
    std::vector<Breakpoint> points;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const std::string p = index_path(points_path, k);
      if (!pts[k].is_array() || pts[k].size() != 2) {
        throw ParseError(p, "expected a [quantity, value] pair");
      }
      points.push_back({number(pts[k][0], index_path(p, 0)), number(pts[k][1], index_path(p, 1))});
    }
    std::optional<double> terminal;
    if (auto it = node.find("terminal_slope"); it != node.end()) {
      terminal = number(*it, field_path(path, "terminal_slope"));
    }
    Curve c = Curve::piecewise(kind, std::move(points), terminal);
    if (const auto v = c.violations(); !v.empty()) throw ParseError(path, v.front());
    return c;
  }
  throw ParseError(field_path(path, "type"), "expected \"linear\" or \"pwl\"");
}

SolverOptions parse_options(const json& node, const std::string& path) {
  require_object(node, path);
  reject_unknown(node, path,
                 {"price_tolerance", "tie_tolerance", "flow_tolerance", "damping",
                  "max_iterations", "method", "exact", "initial_prices"});
  SolverOptions o;
  auto get = [&](const char* key) -> const json* {
    auto it = node.find(key);
    return it == node.end() ? nullptr : &*it;
  };
  if (auto v = get("price_tolerance")) o.price_tolerance = number(*v, field_path(path, "price_tolerance"));
  if (auto v = get("tie_tolerance")) o.tie_tolerance = number(*v, field_path(path, "tie_tolerance"));
  if (auto v = get("flow_tolerance")) o.flow_tolerance = number(*v, field_path(path, "flow_tolerance"));
  if (auto v = get("damping")) o.damping = number(*v, field_path(path, "damping"));
  if (auto v = get("max_iterations")) {
    if (!v->is_number_integer()) {
      throw ParseError(field_path(path, "max_iterations"), "expected an integer");
    }
    o.max_iterations = v->get<long>();
  }
  if (auto v = get("method")) {
    const auto m = parse_method(text(*v, field_path(path, "method")));
    if (!m) throw ParseError(field_path(path, "method"), "unknown solve method");
    o.method = *m;
  }
  if (auto v = get("exact")) o.exact = boolean(*v, field_path(path, "exact"));
  if (auto v = get("initial_prices")) {
    const std::string p = field_path(path, "initial_prices");
    require_array(*v, p);
    std::vector<double> prices;
    for (std::size_t k = 0; k < v->size(); ++k) prices.push_back(number((*v)[k], index_path(p, k)));
    o.initial_prices = std::move(prices);
  }
  try {
    validate_options(o);
  } catch (const DomainError& e) {
    throw ParseError(path, e.what());
  }
  return o;
}

std::size_t country_ref(const Economy& economy, const json& node, const std::string& path) {
  const std::string id = text(node, path);
  const auto index = economy.index_of(id);
  if (!index) throw ParseError(path, "unknown country id '" + id + "'");
  return *index;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("", std::string("malformed JSON: ") + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("", "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// ---------------------------------------------------------------- writing

json curve_json(const Curve& c) {
  const auto points = c.breakpoints();
  const double sign = c.kind() == CurveKind::supply ? 1.0 : -1.0;
  if (points.size() == 1 && points[0].quantity == 0.0 && sign * c.terminal_slope() > 0.0) {
    return {{"type", "linear"},
            {"intercept", points[0].value},
            {"slope", sign * c.terminal_slope()}};
  }
  json pts = json::array();
  for (const Breakpoint& b : points) pts.push_back({b.quantity, b.value});
  return {{"type", "pwl"}, {"points", pts}, {"terminal_slope", c.terminal_slope()}};
}

json options_json(const SolverOptions& o) {
  json out = {{"price_tolerance", o.price_tolerance},
              {"tie_tolerance", o.tie_tolerance},
              {"flow_tolerance", o.flow_tolerance},
              {"damping", o.damping},
              {"max_iterations", o.max_iterations},
              {"method", to_string(o.method)},
              {"exact", o.exact}};
  if (o.initial_prices) out["initial_prices"] = *o.initial_prices;
  return out;
}

json ids_json(const Economy& economy) {
  json ids = json::array();
  for (const Country& c : economy.countries) ids.push_back(c.id);
  return ids;
}

json links_json(const Economy& economy, const TradePattern& pattern) {
  json out = json::array();
  for (const Link& l : pattern.links()) {
    out.push_back({economy.countries[l.producer].id, economy.countries[l.market].id});
  }
  return out;
}

json matrix_json(const FlowMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(row);
  }
  return out;
}

json welfare_json(const CountryWelfare& w) {
  json out = {{"consumer_surplus", w.consumer_surplus},
              {"firm_profits", w.firm_profits},
              {"tariff_revenue", w.tariff_revenue},
              {"total", w.total}};
  if (w.revenue_range) {
    out["tariff_revenue_range"] = {w.revenue_range->first, w.revenue_range->second};
  }
  return out;
}

std::string link_name(const std::vector<std::string>& ids, const Link& l) {
  return ids[l.producer] + "->" + ids[l.market];
}

std::string links_text(const std::vector<std::string>& ids, const std::vector<Link>& links) {
  if (links.empty()) return "none";
  std::string out;
  for (const Link& l : links) out += (out.empty() ? "" : " ") + link_name(ids, l);
  return out;
}

/// Fixed-width text table; the first column is left-aligned.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string str() const {
    std::vector<std::size_t> width;
    for (const auto& row : rows_) {
      width.resize(std::max(width.size(), row.size()), 0);
      for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    std::string out;
    for (const auto& row : rows_) {
      std::string line;
      for (std::size_t c = 0; c < row.size(); ++c) {
        const std::string pad(width[c] - row[c].size(), ' ');
        if (c > 0) line += "  ";
        line += c == 0 ? row[c] + pad : pad + row[c];
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      out += line + "\n";
    }
    return out;
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

std::string csv_line(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (c > 0) out += ',';
    const std::string& cell = cells[c];
    if (cell.find_first_of(",\"\n") == std::string::npos) {
      out += cell;
    } else {
      out += '"';
      for (char ch : cell) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      out += '"';
    }
  }
  return out + "\n";
}

std::vector<std::string> country_ids(const Economy& economy) {
  std::vector<std::string> ids;
  for (const Country& c : economy.countries) ids.push_back(c.id);
  return ids;
}

}  // namespace

Scenario parse_scenario(std::string_view document) {
  const json root = parse_json(document);
  require_object(root, "");
  reject_unknown(root, "",
                 {"name", "description", "countries", "tariffs", "fixed_network", "options"});

  Scenario s;
  if (auto it = root.find("name"); it != root.end()) s.name = text(*it, "name");
  if (auto it = root.find("description"); it != root.end()) {
    s.description = text(*it, "description");
  }

  const json& countries = require_array(member(root, "", "countries"), "countries");
  if (countries.empty()) throw ParseError("countries", "economy has no countries");
  for (std::size_t i = 0; i < countries.size(); ++i) {
    const std::string path = index_path("countries", i);
    const json& c = require_object(countries[i], path);
    reject_unknown(c, path, {"id", "name", "supply", "demand"});
    Country country;
    country.id = text(member(c, path, "id"), field_path(path, "id"));
    country.name = country.id;
    if (auto it = c.find("name"); it != c.end()) country.name = text(*it, field_path(path, "name"));
    country.supply = parse_curve(member(c, path, "supply"), field_path(path, "supply"), CurveKind::supply);
    country.demand = parse_curve(member(c, path, "demand"), field_path(path, "demand"), CurveKind::demand);
    s.economy.countries.push_back(std::move(country));
  }

  const std::size_t n = s.economy.size();
  const json& tariffs = require_array(member(root, "", "tariffs"), "tariffs");
  if (tariffs.size() != n) {
    throw ParseError("tariffs", "dimension mismatch: " + std::to_string(tariffs.size()) +
                                    " rows for " + std::to_string(n) + " countries");
  }
  Matrix<double> rates(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string row_path = index_path("tariffs", i);
    const json& row = require_array(tariffs[i], row_path);
    if (row.size() != n) {
      throw ParseError(row_path, "dimension mismatch: " + std::to_string(row.size()) +
                                     " entries for " + std::to_string(n) + " countries");
    }
    for (std::size_t j = 0; j < n; ++j) rates(i, j) = number(row[j], index_path(row_path, j));
  }
  s.economy.tariffs = TariffMatrix(std::move(rates));

  if (const auto issues = validate_economy(s.economy); !issues.empty()) {
    throw ParseError(issues.front().path, issues.front().message);
  }

  if (auto it = root.find("fixed_network"); it != root.end()) {
    const json& links = require_array(*it, "fixed_network");
    TradePattern pattern(n);
    for (std::size_t k = 0; k < links.size(); ++k) {
      const std::string path = index_path("fixed_network", k);
      if (!links[k].is_array() || links[k].size() != 2) {
        throw ParseError(path, "expected a [producer_id, market_id] pair");
      }
      const std::size_t producer = country_ref(s.economy, links[k][0], index_path(path, 0));
      const std::size_t market = country_ref(s.economy, links[k][1], index_path(path, 1));
      if (pattern.contains(producer, market)) throw ParseError(path, "duplicate link");
      pattern.add(producer, market);
    }
    s.fixed_network = std::move(pattern);
  }

  if (auto it = root.find("options"); it != root.end()) {
    s.options = parse_options(*it, "options");
    if (s.options.initial_prices && s.options.initial_prices->size() != n) {
      throw ParseError("options.initial_prices", "one price per country required");
    }
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_file(path));
}

std::string write_scenario(const Scenario& s) {
  const Economy& e = s.economy;
  json root;
  root["name"] = s.name;
  root["description"] = s.description;
  json countries = json::array();
  for (const Country& c : e.countries) {
    countries.push_back({{"id", c.id},
                         {"name", c.name},
                         {"supply", curve_json(c.supply)},
                         {"demand", curve_json(c.demand)}});
  }
  root["countries"] = countries;
  root["tariffs"] = matrix_json(e.tariffs.matrix());
  if (s.fixed_network) root["fixed_network"] = links_json(e, *s.fixed_network);
  root["options"] = options_json(s.options);
  return root.dump(2) + "\n";
}

FlowMatrix parse_flows(std::string_view document, const Economy& economy) {
  const json root = parse_json(document);
  require_object(root, "");
  const std::size_t n = economy.size();
  if (auto it = root.find("countries"); it != root.end()) {
    const json& ids = require_array(*it, "countries");
    if (ids.size() != n) throw ParseError("countries", "country count differs from the scenario");
    for (std::size_t k = 0; k < n; ++k) {
      if (text(ids[k], index_path("countries", k)) != economy.countries[k].id) {
        throw ParseError(index_path("countries", k), "country order differs from the scenario");
      }
    }
  }
  const json& rows = require_array(member(root, "", "flows"), "flows");
  if (rows.size() != n) {
    throw ParseError("flows", "dimension mismatch: " + std::to_string(rows.size()) +
                                  " rows for " + std::to_string(n) + " countries");
  }
  FlowMatrix flows(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string row_path = index_path("flows", i);
    const json& row = require_array(rows[i], row_path);
    if (row.size() != n) throw ParseError(row_path, "dimension mismatch");
    for (std::size_t j = 0; j < n; ++j) {
      const double q = number(row[j], index_path(row_path, j));
      if (!(q >= 0.0)) throw ParseError(index_path(row_path, j), "negative flow");
      flows(i, j) = q;
    }
  }
  return flows;
}

FlowMatrix load_flows(const std::filesystem::path& path, const Economy& economy) {
  return parse_flows(read_file(path), economy);
}

std::optional<OutputFormat> parse_format(std::string_view text) {
  if (text == "table") return OutputFormat::table;
  if (text == "json") return OutputFormat::json;
  if (text == "csv") return OutputFormat::csv;
  return std::nullopt;
}

std::string format_exact(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

std::string format_short(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of negative zero
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

std::string write_results(const Economy& economy, const Equilibrium& eq, OutputFormat format) {
  const auto ids = country_ids(economy);
  const std::size_t n = economy.size();
  switch (format) {
    case OutputFormat::json: {
      json out = {{"countries", ids_json(economy)},
                  {"consumer_prices", eq.consumer_prices},
                  {"producer_prices", eq.producer_prices},
                  {"flows", matrix_json(eq.flows)},
                  {"pattern", links_json(economy, eq.pattern)},
                  {"support", links_json(economy, eq.support)},
                  {"diagnostics",
                   {{"method", eq.diagnostics.method},
                    {"iterations", eq.diagnostics.iterations},
                    {"max_clearing_residual", eq.diagnostics.max_clearing_residual},
                    {"max_selection_slack", eq.diagnostics.max_selection_slack},
                    {"multiple_flows", eq.diagnostics.multiple_flows}}}};
      return out.dump(2) + "\n";
    }
    case OutputFormat::csv: {
      std::string out =
          csv_line({"importer", "exporter", "quantity", "consumer_price", "producer_price"});
      for (const Link& l : eq.pattern.links()) {
        out += csv_line({ids[l.market], ids[l.producer], format_exact(eq.flows(l.market, l.producer)),
                         format_exact(eq.consumer_prices[l.market]),
                         format_exact(eq.producer_prices[l.producer])});
      }
      return out;
    }
    case OutputFormat::table: {
      TextTable flows({"Trade flow", "Quantity", "Consumer price", "Producer price"});
      for (const Link& l : eq.pattern.links()) {
        const std::string label = l.producer == l.market
                                      ? ids[l.producer] + " domestic"
                                      : ids[l.producer] + " -> " + ids[l.market];
        flows.add({label, format_short(eq.flows(l.market, l.producer)),
                   format_short(eq.consumer_prices[l.market]),
                   format_short(eq.producer_prices[l.producer])});
      }
      TextTable countries(
          {"Country", "Consumer price", "Producer price", "Consumption", "Production"});
      for (std::size_t k = 0; k < n; ++k) {
        countries.add({ids[k], format_short(eq.consumer_prices[k]),
                       format_short(eq.producer_prices[k]), format_short(eq.consumption(k)),
                       format_short(eq.production(k))});
      }
      const Diagnostics& d = eq.diagnostics;
      std::string out = flows.str() + "\n" + countries.str() + "\n";
      out += "method: " + d.method + "\n";
      out += "iterations: " + std::to_string(d.iterations) + "\n";
      out += "max clearing residual: " + format_short(d.max_clearing_residual) + "\n";
      out += "max selection slack: " + format_short(d.max_selection_slack) + "\n";
      out += std::string("flows unique: ") + (d.multiple_flows ? "no" : "yes") + "\n";
      return out;
    }
  }
  return {};
}

std::string write_results(const Economy& economy, const WelfareReport& report,
                          OutputFormat format) {
  const auto ids = country_ids(economy);
  switch (format) {
    case OutputFormat::json: {
      json countries = json::array();
      for (std::size_t k = 0; k < report.countries.size(); ++k) {
        json entry = welfare_json(report.countries[k]);
        entry["country"] = ids[k];
        countries.push_back(entry);
      }
      json out = {{"countries", countries}, {"world", welfare_json(report.world)}};
      return out.dump(2) + "\n";
    }
    case OutputFormat::csv: {
      std::string out =
          csv_line({"country", "consumer_surplus", "firm_profits", "tariff_revenue", "total"});
      for (std::size_t k = 0; k < report.countries.size(); ++k) {
        const CountryWelfare& w = report.countries[k];
        out += csv_line({ids[k], format_exact(w.consumer_surplus), format_exact(w.firm_profits),
                         format_exact(w.tariff_revenue), format_exact(w.total)});
      }
      return out;
    }
    case OutputFormat::table: {
      TextTable table(
          {"Country", "Consumer surplus", "Firm profits", "Tariff revenue", "Total"});
      auto row = [&](const std::string& label, const CountryWelfare& w) {
        table.add({label, format_short(w.consumer_surplus), format_short(w.firm_profits),
                   format_short(w.tariff_revenue), format_short(w.total)});
      };
      for (std::size_t k = 0; k < report.countries.size(); ++k) row(ids[k], report.countries[k]);
      row("World", report.world);
      std::string out = table.str();
      for (std::size_t k = 0; k < report.countries.size(); ++k) {
        if (const auto& r = report.countries[k].revenue_range) {
          out += "note: flows are not unique; " + ids[k] + " tariff revenue ranges over [" +
                 format_short(r->first) + ", " + format_short(r->second) + "]\n";
        }
      }
      return out;
    }
  }
  return {};
}

std::string write_results(const SweepResult& result, OutputFormat format) {
  const auto& ids = result.country_ids;
  const std::size_t n = ids.size();
  switch (format) {
    case OutputFormat::json: {
      json rows = json::array();
      for (const SweepRow& row : result.rows) {
        json entry = {{"tariff_value", row.tariff}, {"converged", row.converged}};
        if (row.converged) {
          json totals = json::array();
          for (const auto& w : row.welfare->countries) totals.push_back(w.total);
          entry["pattern_id"] = row.pattern_id;
          entry["support"] = json::array();
          for (const Link& l : row.equilibrium->support.links()) {
            entry["support"].push_back({ids[l.producer], ids[l.market]});
          }
          entry["consumer_prices"] = row.equilibrium->consumer_prices;
          entry["producer_prices"] = row.equilibrium->producer_prices;
          entry["welfare"] = totals;
        } else {
          entry["error"] = row.error;
        }
        rows.push_back(entry);
      }
      json changes = json::array();
      for (const RegimeChange& c : result.regime_changes) {
        json entry = {{"tariff_lo", c.tariff_lo}, {"tariff_hi", c.tariff_hi},
                      {"unknown", c.unknown}};
        if (!c.unknown) {
          auto names = [&](const std::vector<Link>& links) {
            json out = json::array();
            for (const Link& l : links) out.push_back({ids[l.producer], ids[l.market]});
            return out;
          };
          entry["removed"] = names(c.removed);
          entry["added"] = names(c.added);
          entry["welfare_jump"] = c.welfare_jump;
        }
        if (c.refined) entry["refined"] = {c.refined->first, c.refined->second};
        changes.push_back(entry);
      }
      json out = {{"importer", n ? ids[result.importer] : ""},
                  {"exporter", n ? ids[result.exporter] : ""},
                  {"countries", ids},
                  {"rows", rows},
                  {"regime_changes", changes}};
      return out.dump(2) + "\n";
    }
    case OutputFormat::csv:
    case OutputFormat::table: {
      std::vector<std::string> header{"tariff_value", "pattern_id"};
      for (const auto& id : ids) header.push_back("consumer_price_" + id);
      for (const auto& id : ids) header.push_back("producer_price_" + id);
      for (const auto& id : ids) header.push_back("welfare_" + id);
      header.push_back("convergence_status");
      const bool csv = format == OutputFormat::csv;
      auto num = [csv](double v) { return csv ? format_exact(v) : format_short(v); };

      std::vector<std::vector<std::string>> lines;
      for (const SweepRow& row : result.rows) {
        std::vector<std::string> cells{num(row.tariff), row.pattern_id};
        for (std::size_t k = 0; k < 3 * n; ++k) {
          if (!row.converged) {
            cells.push_back("");
          } else if (k < n) {
            cells.push_back(num(row.equilibrium->consumer_prices[k]));
          } else if (k < 2 * n) {
            cells.push_back(num(row.equilibrium->producer_prices[k - n]));
          } else {
            cells.push_back(num(row.welfare->countries[k - 2 * n].total));
          }
        }
        cells.push_back(row.converged ? "converged" : "failed");
        lines.push_back(std::move(cells));
      }
      if (csv) {
        std::string out = csv_line(header);
        for (const auto& cells : lines) out += csv_line(cells);
        return out;
      }
      TextTable table(header);
      for (auto& cells : lines) table.add(std::move(cells));
      std::string out = table.str();
      for (const RegimeChange& c : result.regime_changes) {
        out += "regime change in (" + format_short(c.tariff_lo) + ", " +
               format_short(c.tariff_hi) + "]: ";
        if (c.unknown) {
          out += "unknown (a neighbouring solve failed)\n";
          continue;
        }
        out += "removed " + links_text(ids, c.removed) + "; added " + links_text(ids, c.added) +
               "; welfare jump";
        for (std::size_t k = 0; k < c.welfare_jump.size(); ++k) {
          out += " " + ids[k] + " " + format_short(c.welfare_jump[k]);
        }
        if (c.refined) {
          out += "; boundary in [" + format_short(c.refined->first) + ", " +
                 format_short(c.refined->second) + "]";
        }
        out += "\n";
      }
      return out;
    }
  }
  return {};
}

}  // namespace tariffnet
