// Benchmark runner for the unfitted interface solver library: discretizes
// the example problems, solves them with the configured method, and writes
// one CSV row per run. See --help for the flag reference.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cutmg/bench.hpp"
#include "cutmg/cut.hpp"
#include "cutmg/mesh.hpp"

namespace {

using namespace cutmg;

/// Finds the --config value ahead of the full parse so file values load
/// first and command-line flags override them.
std::string prescan_config(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) return argv[i + 1];
    if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
  }
  return "";
}

int run_dump_mesh(const RunConfig& config) {
  const Problem problem = [&config] {
    const std::string example = config.example.empty() ? "example1" : config.example;
    if (example == "example1") return example1();
    if (example == "example2" || example == "example3") return example2(1.0, 1.0);
    if (example == "multi") {
      int k = 1;
      if (config.interfaces != "all") {
        try {
          k = std::stoi(config.interfaces);
        } catch (const std::exception&) {
          throw ConfigError("interfaces: expected a count, got '" + config.interfaces + "'");
        }
      }
      return example1_multi(k);
    }
    throw ConfigError("unknown example '" + example + "'");
  }();
  const TriMesh mesh(level_cells(config.finest));
  const CutDecomposition cut = classify_and_cut(mesh, problem.interfaces);

  if (config.out.empty()) {
    dump_mesh(mesh, std::cout);
    dump_cuts(cut, std::cout);
  } else {
    std::ofstream out(config.out);
    if (!out) throw ConfigError("cannot open output file: " + config.out);
    dump_mesh(mesh, out);
    dump_cuts(cut, out);
  }
  return 0;
}

int run(int argc, char** argv) {
  RunConfig config;
  const std::string config_path = prescan_config(argc, argv);
  if (!config_path.empty()) apply_config_file(config, config_path);

  CLI::App app{"Benchmark runner for the unfitted interface solver library"};
  app.require_subcommand(0, 1);

  std::string config_file;
  app.add_option("--config", config_file,
                 "key=value configuration file; command-line flags override it");
  app.add_option("--variant", config.variant, "stabilization variant: ev, lo, gp or all");
  app.add_option("--alpha1", config.alpha1, "diffusion coefficient of subdomain 1");
  app.add_option("--alpha2", config.alpha2, "diffusion coefficient of subdomain 2");
  app.add_option("--finest", config.finest, "finest benchmark level (1-5; level 1 = 100x100)");
  app.add_option("--levels", config.levels, "hierarchy depth (0 derives it from --ncoarse)");
  app.add_option("--solver", config.solver, "cg-jacobi, cg-sgs, cg-smg or smg");
  app.add_option("--ncoarse", config.ncoarse, "coarsest cells per side when --levels is 0");
  app.add_option("--interfaces", config.interfaces,
                 "multi only: interface count 1-10 or 'all'");
  app.add_option("--out", config.out, "output CSV path (default: stdout)");
  app.add_option("--tol", config.tol, "relative energy-norm solver tolerance");
  app.add_flag("--kappa", config.kappa, "estimate the condition number per run");
  app.add_flag("--l5", config.l5, "raise the finest level to 5 (large run)");
  app.add_flag("--fem", config.fem, "example1 only: fitted mesh without the interface");
  bool no_errors = false;
  app.add_flag("--no-errors", no_errors, "skip discretization error computation");
  app.add_option("--dump-matrix", config.dump_matrix,
                 "write the last run's eliminated matrix (MatrixMarket)");
  app.add_option("--dump-transfer", config.dump_transfer,
                 "write the last run's finest transfer (MatrixMarket)");
  std::string dump_example;
  CLI::App* example1_cmd = app.add_subcommand("example1", "line interface, unit coefficients");
  CLI::App* example2_cmd = app.add_subcommand("example2", "circle, coefficients on the rhs");
  CLI::App* example3_cmd = app.add_subcommand("example3", "circle, coefficients on the exact solution");
  CLI::App* multi_cmd = app.add_subcommand("multi", "parallel line interfaces, unit coefficients");
  CLI::App* dump_cmd = app.add_subcommand("dump-mesh", "write the mesh and cut segments as text");
  dump_cmd->add_option("--example", dump_example, "geometry to classify against (default example1)");
  for (CLI::App* sub : {example1_cmd, example2_cmd, example3_cmd, multi_cmd, dump_cmd})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (no_errors) config.errors = false;
  if (example1_cmd->parsed()) config.example = "example1";
  if (example2_cmd->parsed()) config.example = "example2";
  if (example3_cmd->parsed()) config.example = "example3";
  if (multi_cmd->parsed()) config.example = "multi";
  if (dump_cmd->parsed()) {
    if (!dump_example.empty()) config.example = dump_example;
    if (config.l5) config.finest = 5;
    return run_dump_mesh(config);
  }
  if (app.get_subcommands().empty() && config.example.empty())
    throw ConfigError("no example selected: pass a subcommand or example= in the config");

  const std::vector<BenchmarkRow> rows = run_benchmark(config);
  if (config.out.empty()) {
    write_csv(rows, std::cout);
  } else {
    std::ofstream out(config.out);
    if (!out) throw ConfigError("cannot open output file: " + config.out);
    write_csv(rows, out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const cutmg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const cutmg::SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
