#include "hdg/convergence.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace hdg {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  text = trim(text);
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw ConfigError(std::string(key), "malformed value '" + std::string(text) + "'");
  }
  return value;
}

std::string format_double(double v) {
  if (!std::isfinite(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::string format_optional(const std::optional<double>& v) { return v ? format_double(*v) : "nan"; }

}  // namespace

std::vector<int> parse_levels(std::string_view text) {
  text = trim(text);
  std::vector<int> levels;
  if (const auto dots = text.find(".."); dots != std::string_view::npos) {
    const int lo = parse_number<int>("levels", text.substr(0, dots));
    const int hi = parse_number<int>("levels", text.substr(dots + 2));
    if (hi < lo) throw ConfigError("levels", "empty range '" + std::string(text) + "'");
    for (int l = lo; l <= hi; ++l) levels.push_back(l);
  } else {
    std::size_t start = 0;
    while (start <= text.size()) {
      const auto comma = text.find(',', start);
      const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      levels.push_back(parse_number<int>("levels", piece));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] < 0 || levels[i] > 12) throw ConfigError("levels", "level outside [0, 12]");
    if (i > 0 && levels[i] <= levels[i - 1]) throw ConfigError("levels", "levels must be strictly ascending");
  }
  return levels;
}

std::vector<Variant> RunConfig::variants() const {
  switch (variant) {
    case VariantSelection::stabilised: return {Variant::stabilised};
    case VariantSelection::baseline: return {Variant::baseline};
    case VariantSelection::both: return {Variant::stabilised, Variant::baseline};
  }
  return {};
}

MethodParams RunConfig::method(Variant v) const {
  MethodParams p;
  p.nu = nu;
  p.epsilon = epsilon;
  p.tau = tau;
  p.k = k;
  p.variant = v;
  p.volume_degree = quad_degree;
  p.edge_degree = std::max(quad_degree - 2, 2 * k + 2);
  return p;
}

void RunConfig::validate() const {
  if (k < kMinBdmOrder || k > kMaxBdmOrder) throw ConfigError("k", "order " + std::to_string(k) + " not implemented");
  if (epsilon != -1 && epsilon != 1) throw ConfigError("epsilon", "must be -1 or 1");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ConfigError("tau", "must be positive");
  if (!(nu > 0.0) || !std::isfinite(nu)) throw ConfigError("nu", "must be positive");
  if (levels.empty()) throw ConfigError("levels", "no levels given");
  if (quad_degree < 2 * k || quad_degree > kMaxQuadratureDegree) {
    throw ConfigError("quad-degree", "must lie in [2k, " + std::to_string(kMaxQuadratureDegree) + "]");
  }
}

void apply_setting(RunConfig& config, std::string_view key_in, std::string_view value_in) {
  const std::string key(trim(key_in));
  const std::string_view value = trim(value_in);
  if (key == "k") {
    config.k = parse_number<int>(key, value);
    if (config.k < kMinBdmOrder || config.k > kMaxBdmOrder) throw ConfigError(key, "order not implemented");
  } else if (key == "epsilon") {
    std::string_view v = value;
    if (!v.empty() && v.front() == '+') v.remove_prefix(1);
    config.epsilon = parse_number<int>(key, v);
    if (config.epsilon != -1 && config.epsilon != 1) throw ConfigError(key, "must be -1 or 1");
  } else if (key == "tau") {
    config.tau = parse_number<double>(key, value);
    if (!(config.tau > 0.0)) throw ConfigError(key, "must be positive");
  } else if (key == "nu") {
    config.nu = parse_number<double>(key, value);
    if (!(config.nu > 0.0)) throw ConfigError(key, "must be positive");
  } else if (key == "levels") {
    config.levels = parse_levels(value);
  } else if (key == "pattern") {
    try {
      config.pattern = parse_pattern(value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(key, e.what());
    }
  } else if (key == "variant") {
    if (value == "both") {
      config.variant = VariantSelection::both;
    } else if (value == "stabilised" || value == "stabilized") {
      config.variant = VariantSelection::stabilised;
    } else if (value == "baseline") {
      config.variant = VariantSelection::baseline;
    } else {
      throw ConfigError(key, "expected stabilised, baseline or both");
    }
  } else if (key == "out") {
    config.out = std::string(value);
  } else if (key == "quad-degree" || key == "quad_degree") {
    config.quad_degree = parse_number<int>(key, value);
    if (config.quad_degree < 2 || config.quad_degree > kMaxQuadratureDegree) throw ConfigError(key, "out of range");
  } else {
    throw ConfigError(key, "unknown key");
  }
}

RunConfig parse_config(std::span<const std::string> lines, RunConfig base) {
  for (const std::string& raw : lines) {
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(std::string(line), "expected key=value");
    apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
  }
  return base;
}

RunConfig parse_config_file(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return parse_config(lines, std::move(base));
}

void ConvergenceTable::add(int level, const ErrorReport& errors) {
  ConvergenceRow row;
  row.level = level;
  row.errors = errors;
  if (!rows.empty()) {
    const ErrorReport& prev = rows.back().errors;
    const auto order = [&](double a, double b) -> std::optional<double> {
      const double ratio = prev.h / errors.h;
      if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b) || !(ratio > 1.0)) return std::nullopt;
      return std::log(a / b) / std::log(ratio);
    };
    row.eoc_u = order(prev.velocity_l2, errors.velocity_l2);
    row.eoc_p = order(prev.pressure_l2, errors.pressure_l2);
    row.eoc_h1 = order(prev.velocity_h1, errors.velocity_h1);
    row.eoc_triple = order(prev.triple, errors.triple);
    row.eoc_triple_full = order(prev.triple_full, errors.triple_full);
  }
  rows.push_back(row);
}

std::vector<ConvergenceTable> run_convergence(const RunConfig& config, const RowCallback& on_row) {
  const CurlSolution exact;
  return run_convergence(config, exact, on_row);
}

std::vector<ConvergenceTable> run_convergence(const RunConfig& config, const ExactSolution& exact,
                                              const RowCallback& on_row) {
  config.validate();
  std::vector<ConvergenceTable> tables;
  for (Variant v : config.variants()) {
    ConvergenceTable t;
    t.variant = v;
    t.epsilon = config.epsilon;
    tables.push_back(t);
  }

  for (int level : config.levels) {
    const Mesh mesh = mesh_for_level(level, config.pattern);
    for (ConvergenceTable& table : tables) {
      const MethodParams params = config.method(table.variant);
      try {
        const DiscreteSpaces spaces(mesh, params.k, params.pressure_order());
        const GlobalSystem system =
            assemble(spaces, params, exact.forcing_field(params.nu), exact.normal_stress_field(params.nu));
        const SolutionFields solution = solve(system, spaces);
        table.add(level, compute_errors(spaces, solution, exact, params));
      } catch (const std::exception& e) {
        throw ConvergenceError("level " + std::to_string(level) + " (" + std::string(to_string(table.variant)) +
                                   ", epsilon=" + std::to_string(config.epsilon) + "): " + e.what(),
                               tables);
      }
      if (on_row) on_row(table, table.rows.back());
    }
  }
  return tables;
}

void write_csv(const ConvergenceTable& table, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const ConvergenceRow& r : table.rows) {
    const ErrorReport& e = r.errors;
    out << r.level << ',' << format_double(e.h) << ',' << e.n_dofs << ',' << format_double(e.velocity_l2) << ','
        << format_double(e.pressure_l2) << ',' << format_double(e.velocity_h1) << ',' << format_double(e.triple)
        << ',' << format_double(e.triple_full) << ',' << format_optional(r.eoc_u) << ','
        << format_optional(r.eoc_p) << '\n';
  }
}

void emit_csv(const ConvergenceTable& table, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_csv(table, out);
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

ConvergenceTable read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != kCsvHeader) throw std::runtime_error("read_csv: missing header");
  ConvergenceTable table;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    if (fields.size() != 10) throw std::runtime_error("read_csv: expected 10 fields in '" + line + "'");
    const auto num = [](const std::string& s) { return std::strtod(s.c_str(), nullptr); };
    const auto opt = [&](const std::string& s) -> std::optional<double> {
      const double v = num(s);
      return std::isnan(v) ? std::nullopt : std::optional<double>(v);
    };
    ConvergenceRow r;
    r.level = std::stoi(fields[0]);
    r.errors.h = num(fields[1]);
    r.errors.n_dofs = std::stoi(fields[2]);
    r.errors.velocity_l2 = num(fields[3]);
    r.errors.pressure_l2 = num(fields[4]);
    r.errors.velocity_h1 = num(fields[5]);
    r.errors.triple = num(fields[6]);
    r.errors.triple_full = num(fields[7]);
    r.eoc_u = opt(fields[8]);
    r.eoc_p = opt(fields[9]);
    table.rows.push_back(r);
  }
  return table;
}

std::filesystem::path csv_path_for(const std::filesystem::path& out, Variant variant, bool multiple) {
  if (!multiple) return out;
  std::filesystem::path p = out;
  const std::string ext = out.has_extension() ? out.extension().string() : ".csv";
  p.replace_filename(out.stem().string() + "_" + std::string(to_string(variant)) + ext);
  return p;
}

void print_table(const ConvergenceTable& table, std::ostream& out) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "# %s, epsilon = %+d\n", std::string(to_string(table.variant)).c_str(), table.epsilon);
  out << buf;
  std::snprintf(buf, sizeof buf, "%5s %10s %8s  %11s %5s  %11s %5s  %11s %5s  %11s %5s  %11s %5s\n", "level", "h",
                "ndofs", "|u-uh|", "eoc", "|p-ph|", "eoc", "|u-uh|_1h", "eoc", "|||e|||", "eoc", "|||e|||_h", "eoc");
  out << buf;
  const auto o = [](const std::optional<double>& v) {
    char b[16];
    if (v) std::snprintf(b, sizeof b, "%5.2f", *v);
    else std::snprintf(b, sizeof b, "%5s", "-");
    return std::string(b);
  };
  for (const ConvergenceRow& r : table.rows) {
    const ErrorReport& e = r.errors;
    std::snprintf(buf, sizeof buf, "%5d %10.3e %8d  %11.4e %s  %11.4e %s  %11.4e %s  %11.4e %s  %11.4e %s\n", r.level,
                  e.h, e.n_dofs, e.velocity_l2, o(r.eoc_u).c_str(), e.pressure_l2, o(r.eoc_p).c_str(), e.velocity_h1,
                  o(r.eoc_h1).c_str(), e.triple, o(r.eoc_triple).c_str(), e.triple_full,
                  o(r.eoc_triple_full).c_str());
    out << buf;
  }
}

void print_pressure_comparison(const ConvergenceTable& stabilised, const ConvergenceTable& baseline,
                               std::ostream& out) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "# |p - p_h|, epsilon = %+d\n%8s  %12s  %12s  %8s\n", stabilised.epsilon, "h",
                "Q^{k-1}", "Q^k (stab)", "ratio");
  out << buf;
  for (const ConvergenceRow& s : stabilised.rows) {
    const auto it = std::find_if(baseline.rows.begin(), baseline.rows.end(),
                                 [&](const ConvergenceRow& b) { return b.level == s.level; });
    if (it == baseline.rows.end()) continue;
    std::snprintf(buf, sizeof buf, "%8s  %12.6f  %12.6f  %8.3f\n", ("2^-" + std::to_string(s.level)).c_str(),
                  it->errors.pressure_l2, s.errors.pressure_l2, it->errors.pressure_l2 / s.errors.pressure_l2);
    out << buf;
  }
}

}  // namespace hdg
