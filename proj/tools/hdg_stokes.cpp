// Convergence study driver for the hybrid DG Stokes discretisation.

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hdg/assembly.hpp"
#include "hdg/convergence.hpp"

namespace {

void dump_first_level(const hdg::RunConfig& config, const std::string& mesh_path, const std::string& matrix_path) {
  const hdg::Mesh mesh = hdg::mesh_for_level(config.levels.front(), config.pattern);
  if (!mesh_path.empty()) {
    std::ofstream out(mesh_path);
    if (!out) throw std::runtime_error("cannot open " + mesh_path);
    hdg::write_mesh_ascii(mesh, out);
  }
  if (!matrix_path.empty()) {
    const hdg::MethodParams params = config.method(config.variants().front());
    const hdg::DiscreteSpaces spaces(mesh, params.k, params.pressure_order());
    const hdg::CurlSolution exact;
    const hdg::GlobalSystem system =
        hdg::assemble(spaces, params, exact.forcing_field(params.nu), exact.normal_stress_field(params.nu));
    std::ofstream out(matrix_path);
    if (!out) throw std::runtime_error("cannot open " + matrix_path);
    hdg::write_coordinate(system.matrix, out);
  }
}

void write_outputs(const hdg::RunConfig& config, const std::vector<hdg::ConvergenceTable>& tables) {
  if (config.out.empty()) return;
  const bool multiple = tables.size() > 1;
  for (const auto& t : tables) {
    const auto path = hdg::csv_path_for(config.out, t.variant, multiple);
    hdg::emit_csv(t, path);
    std::cerr << "wrote " << path.string() << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid DG Stokes solver with TVNF boundary conditions: convergence study on the unit square"};

  std::string config_file, mesh_dump, matrix_dump;
  std::map<std::string, std::string> flags;
  app.add_option("--config", config_file, "key=value configuration file (flags override it)");
  for (const char* key : {"k", "epsilon", "tau", "nu", "levels", "pattern", "variant", "out", "quad-degree"}) {
    app.add_option_function<std::string>(
        std::string("--") + key, [&flags, key](const std::string& v) { flags[key] = v; },
        std::string("set ") + key);
  }
  app.add_option("--dump-mesh", mesh_dump, "write the first level's mesh in ASCII form");
  app.add_option("--dump-matrix", matrix_dump, "write the first level's system matrix as row col value triples");
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "only print the final tables");

  CLI11_PARSE(app, argc, argv);

  hdg::RunConfig config;
  try {
    if (!config_file.empty()) config = hdg::parse_config_file(config_file);
    for (const auto& [key, value] : flags) hdg::apply_setting(config, key, value);
    config.validate();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    dump_first_level(config, mesh_dump, matrix_dump);
    const auto progress = [quiet](const hdg::ConvergenceTable& t, const hdg::ConvergenceRow& r) {
      if (quiet) return;
      std::cerr << "level " << r.level << " " << hdg::to_string(t.variant) << ": ndofs=" << r.errors.n_dofs
                << " |p-ph|=" << r.errors.pressure_l2 << '\n';
    };
    std::vector<hdg::ConvergenceTable> tables;
    try {
      tables = hdg::run_convergence(config, progress);
    } catch (const hdg::ConvergenceError& e) {
      write_outputs(config, e.partial());
      throw;
    }
    for (const auto& t : tables) {
      hdg::print_table(t, std::cout);
      std::cout << '\n';
    }
    if (tables.size() == 2) hdg::print_pressure_comparison(tables[0], tables[1], std::cout);
    write_outputs(config, tables);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
