// Convergence studies over uniformly refined meshes: configuration, driver,
// tabulation and CSV output.

#ifndef HDG_CONVERGENCE_HPP
#define HDG_CONVERGENCE_HPP

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hdg/manufactured.hpp"
#include "hdg/mesh.hpp"

namespace hdg {

enum class VariantSelection { stabilised, baseline, both };

class ConfigError : public std::invalid_argument {
 public:
  ConfigError(const std::string& key, const std::string& message)
      : std::invalid_argument(key + ": " + message), key_(key) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

struct RunConfig {
  int k = 1;
  int epsilon = -1;
  double tau = 6.0;
  double nu = 1.0;
  std::vector<int> levels{1, 2, 3, 4, 5, 6};
  DiagonalPattern pattern = DiagonalPattern::diagonal;
  VariantSelection variant = VariantSelection::stabilised;
  std::string out;       ///< CSV path; empty means no file
  int quad_degree = 8;   ///< triangle rule degree; edges use quad_degree - 2

  std::vector<Variant> variants() const;
  MethodParams method(Variant v) const;
  void validate() const;
};

/// Applies one key=value setting. Throws ConfigError naming the key.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Lines of the form key=value; blank lines and lines starting with '#' are ignored.
RunConfig parse_config(std::span<const std::string> lines, RunConfig base = {});
RunConfig parse_config_file(const std::filesystem::path& path, RunConfig base = {});

/// "1..6", "2,3,5" or "4".
std::vector<int> parse_levels(std::string_view text);

struct ConvergenceRow {
  int level = 0;
  ErrorReport errors;
  std::optional<double> eoc_u, eoc_p, eoc_h1, eoc_triple, eoc_triple_full;
};

struct ConvergenceTable {
  Variant variant = Variant::stabilised;
  int epsilon = -1;
  std::vector<ConvergenceRow> rows;

  /// Appends a row and fills its orders from the previous row.
  void add(int level, const ErrorReport& errors);
};

/// Carries the tables completed before a failing level.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::vector<ConvergenceTable> partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const std::vector<ConvergenceTable>& partial() const noexcept { return partial_; }

 private:
  std::vector<ConvergenceTable> partial_;
};

/// Called after each solved (level, variant).
using RowCallback = std::function<void(const ConvergenceTable&, const ConvergenceRow&)>;

/// One table per selected variant, computed for the CurlSolution benchmark.
std::vector<ConvergenceTable> run_convergence(const RunConfig& config, const RowCallback& on_row = {});

/// Same driver for an arbitrary exact solution.
std::vector<ConvergenceTable> run_convergence(const RunConfig& config, const ExactSolution& exact,
                                              const RowCallback& on_row = {});

inline constexpr std::string_view kCsvHeader =
    "level,h,ndofs,err_u_l2,err_p_l2,err_h1,err_triple,err_triple_full,eoc_u,eoc_p";

void write_csv(const ConvergenceTable& table, std::ostream& out);
/// Throws std::runtime_error naming the path on I/O failure.
void emit_csv(const ConvergenceTable& table, const std::filesystem::path& path);
/// Parses a file written by write_csv (variant/epsilon are not stored).
ConvergenceTable read_csv(std::istream& in);

/// Output path for a variant: the path itself for a single table, otherwise
/// stem_stabilised.ext / stem_baseline.ext.
std::filesystem::path csv_path_for(const std::filesystem::path& out, Variant variant, bool multiple);

void print_table(const ConvergenceTable& table, std::ostream& out);
/// Side-by-side |p - p_h| of the two variants at common levels.
void print_pressure_comparison(const ConvergenceTable& stabilised, const ConvergenceTable& baseline,
                               std::ostream& out);

}  // namespace hdg

#endif  // HDG_CONVERGENCE_HPP
