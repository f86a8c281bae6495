#include "cpl/run_config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace cpl {

std::vector<double> TemperatureSweep::grid() const {
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(points));
  if (points == 1) {
    g.push_back(start_K);
    return g;
  }
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(points - 1);
    if (spacing == SweepSpacing::linear) {
      g.push_back(start_K + t * (stop_K - start_K));
    } else {
      g.push_back(start_K * std::pow(stop_K / start_K, t));
    }
  }
  return g;
}

std::vector<double> RunConfig::temperature_grid() const {
  if (sweep) return sweep->grid();
  if (!temperature_K)
    throw ValidationError("config: no temperature_K and no temperature_sweep block");
  return {*temperature_K};
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct KeyValueStore {
  std::map<std::string, std::string> values;  // "section.key" -> value
  std::map<std::string, int> lines;

  bool has(const std::string& key) const { return values.count(key) != 0; }

  std::string take(const std::string& key, std::map<std::string, bool>& consumed) {
    consumed[key] = true;
    return values.at(key);
  }
};

double parse_double(const std::string& key, const std::string& raw) {
  char* end = nullptr;
  const double v = std::strtod(raw.c_str(), &end);
  if (end == raw.c_str() || *end != '\0' || !std::isfinite(v))
    throw ValidationError("config: key '" + key + "' has a non-numeric value '" + raw + "'");
  return v;
}

long parse_long(const std::string& key, const std::string& raw) {
  char* end = nullptr;
  const long v = std::strtol(raw.c_str(), &end, 10);
  if (end == raw.c_str() || *end != '\0')
    throw ValidationError("config: key '" + key + "' has a non-integer value '" + raw + "'");
  return v;
}

}  // namespace

RunConfig parse_run_config(std::istream& in) {
  KeyValueStore store;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ValidationError("config: malformed section header at line " +
                              std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError("config: expected key = value at line " + std::to_string(lineno));
    const std::string key = section + "." + trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty())
      throw ValidationError("config: key '" + key + "' outside any [section]");
    if (store.values.count(key))
      throw ValidationError("config: duplicate key '" + key + "'");
    store.values[key] = value;
    store.lines[key] = lineno;
  }

  std::map<std::string, bool> consumed;
  auto require = [&](const std::string& key) {
    if (!store.has(key)) throw ValidationError("config: missing required key '" + key + "'");
    return store.take(key, consumed);
  };
  auto optional_key = [&](const std::string& key) -> std::optional<std::string> {
    if (!store.has(key)) return std::nullopt;
    return store.take(key, consumed);
  };

  RunConfig cfg;
  cfg.material.epsilon0 = parse_double("material.epsilon0", require("material.epsilon0"));
  cfg.material.mu0 = parse_double("material.mu0", require("material.mu0"));
  if (auto kind = optional_key("material.conductivity.kind")) {
    if (*kind == "none")
      cfg.material.conductivity.kind = ConductivityKind::none;
    else if (*kind == "constant")
      cfg.material.conductivity.kind = ConductivityKind::constant;
    else if (*kind == "arrhenius")
      cfg.material.conductivity.kind = ConductivityKind::arrhenius;
    else
      throw ValidationError(
          "config: material.conductivity.kind must be none|constant|arrhenius");
  }
  if (auto s = optional_key("material.conductivity.sigma0"))
    cfg.material.conductivity.sigma0_rad_s = parse_double("material.conductivity.sigma0", *s);
  if (auto s = optional_key("material.conductivity.activation"))
    cfg.material.conductivity.activation_J =
        parse_double("material.conductivity.activation", *s);

  cfg.atom.alpha0_m3 = parse_double("atom.alpha0_m3", require("atom.alpha0_m3"));
  cfg.atom.beta0_m3 = parse_double("atom.beta0_m3", require("atom.beta0_m3"));

  cfg.separation_m = parse_double("geometry.separation_m", require("geometry.separation_m"));
  if (auto t = optional_key("geometry.temperature_K"))
    cfg.temperature_K = parse_double("geometry.temperature_K", *t);
  const bool has_sweep = store.has("geometry.temperature_sweep.start_K");
  if (has_sweep) {
    TemperatureSweep sw;
    sw.start_K = parse_double("geometry.temperature_sweep.start_K",
                              require("geometry.temperature_sweep.start_K"));
    sw.stop_K = parse_double("geometry.temperature_sweep.stop_K",
                             require("geometry.temperature_sweep.stop_K"));
    sw.points = static_cast<int>(parse_long("geometry.temperature_sweep.points",
                                            require("geometry.temperature_sweep.points")));
    const std::string spacing = require("geometry.temperature_sweep.spacing");
    if (spacing == "linear")
      sw.spacing = SweepSpacing::linear;
    else if (spacing == "log")
      sw.spacing = SweepSpacing::log;
    else
      throw ValidationError("config: geometry.temperature_sweep.spacing must be linear|log");
    if (sw.points < 1)
      throw ValidationError("config: geometry.temperature_sweep.points must be >= 1");
    if (!(sw.start_K > 0.0) || !(sw.stop_K >= sw.start_K))
      throw ValidationError("config: temperature sweep needs 0 < start_K <= stop_K");
    cfg.sweep = sw;
  }
  if (!cfg.temperature_K && !cfg.sweep)
    throw ValidationError(
        "config: geometry needs temperature_K or a temperature_sweep block");

  if (auto v = optional_key("numerics.quad_rel_tol"))
    cfg.quad.relative_tolerance = parse_double("numerics.quad_rel_tol", *v);
  if (auto v = optional_key("numerics.series_tail_tol"))
    cfg.series.relative_tail_tolerance = parse_double("numerics.series_tail_tol", *v);
  if (auto v = optional_key("numerics.max_terms"))
    cfg.series.max_terms = parse_long("numerics.max_terms", *v);

  if (auto v = optional_key("output.format")) {
    if (*v == "csv")
      cfg.format = OutputFormat::csv;
    else if (*v == "json")
      cfg.format = OutputFormat::json;
    else
      throw ValidationError("config: output.format must be csv|json");
  }
  if (auto v = optional_key("output.path")) cfg.out_path = *v;

  for (const auto& [key, value] : store.values)
    if (!consumed.count(key))
      throw ValidationError("config: unknown key '" + key + "' (line " +
                            std::to_string(store.lines.at(key)) + ")");

  cfg.material.validate();
  for (auto& w : cfg.atom.validate()) cfg.warnings.push_back(w);
  if (!(cfg.separation_m > 0.0))
    throw ValidationError("config: geometry.separation_m must be > 0");
  if (cfg.temperature_K && !(*cfg.temperature_K >= 0.0))
    throw ValidationError("config: geometry.temperature_K must be >= 0");
  cfg.quad.validate();
  cfg.series.validate();
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot open '" + path + "'");
  return parse_run_config(in);
}

}  // namespace cpl
