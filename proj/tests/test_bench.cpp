#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cutmg/bench.hpp"
#include "cutmg/problem.hpp"

using cutmg::RunConfig;
using cutmg::Scalar;

namespace {

struct TempFile {
  std::string path;

  explicit TempFile(const std::string& name, const std::string& content) : path(name) {
    std::ofstream out(path);
    out << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("benchmark levels double a hundred-cell grid") {
  CHECK(cutmg::level_cells(1) == 100);
  CHECK(cutmg::level_cells(2) == 200);
  CHECK(cutmg::level_cells(5) == 1600);
  CHECK_THROWS_AS(cutmg::level_cells(0), cutmg::ConfigError);
  CHECK_THROWS_AS(cutmg::level_cells(6), cutmg::ConfigError);
}

TEST_CASE("hierarchy depth derives from the coarsest grid") {
  CHECK(cutmg::derive_depth(100, 100) == 1);
  CHECK(cutmg::derive_depth(100, 25) == 3);
  CHECK(cutmg::derive_depth(200, 25) == 4);
  CHECK(cutmg::derive_depth(400, 25) == 5);
  CHECK(cutmg::derive_depth(1600, 25) == 7);
  CHECK_THROWS_AS(cutmg::derive_depth(100, 30), cutmg::ConfigError);
  CHECK_THROWS_AS(cutmg::derive_depth(100, 101), cutmg::ConfigError);
  CHECK_THROWS_AS(cutmg::derive_depth(100, 0), cutmg::ConfigError);
}

TEST_CASE("solver names parse and print") {
  CHECK(cutmg::parse_solver("cg-jacobi") == cutmg::SolverKind::cg_jacobi);
  CHECK(cutmg::parse_solver("cg-sgs") == cutmg::SolverKind::cg_sgs);
  CHECK(cutmg::parse_solver("cg-smg") == cutmg::SolverKind::cg_smg);
  CHECK(cutmg::parse_solver("smg") == cutmg::SolverKind::smg);
  CHECK(cutmg::solver_name(cutmg::SolverKind::cg_sgs) == "cg-sgs");
  CHECK_THROWS_AS(cutmg::parse_solver("gmres"), cutmg::ConfigError);
}

TEST_CASE("config files set fields and reject unknown keys") {
  RunConfig config;
  const TempFile file("bench_config_ok.tmp",
                      "# benchmark setup\n"
                      "example = example2\n"
                      "alpha1 = 1e-5\n"
                      "\n"
                      "variant=gp\n"
                      "finest = 2\n"
                      "kappa = true\n"
                      "errors = false\n");
  cutmg::apply_config_file(config, file.path);
  CHECK(config.example == "example2");
  CHECK(config.alpha1 == doctest::Approx(1e-5));
  CHECK(config.variant == "gp");
  CHECK(config.finest == 2);
  CHECK(config.kappa);
  CHECK_FALSE(config.errors);

  const TempFile unknown("bench_config_unknown.tmp", "examle = example2\n");
  CHECK_THROWS_AS(cutmg::apply_config_file(config, unknown.path), cutmg::ConfigError);

  const TempFile bad_value("bench_config_bad.tmp", "finest = soon\n");
  CHECK_THROWS_AS(cutmg::apply_config_file(config, bad_value.path), cutmg::ConfigError);

  const TempFile no_equals("bench_config_noeq.tmp", "finest\n");
  CHECK_THROWS_AS(cutmg::apply_config_file(config, no_equals.path), cutmg::ConfigError);

  CHECK_THROWS_AS(cutmg::apply_config_file(config, "does_not_exist.tmp"), cutmg::ConfigError);
}

TEST_CASE("csv schema is stable") {
  CHECK(cutmg::csv_header() ==
        "example,variant,solver,alpha1,alpha2,level,depth,ncoarse,interfaces,tol,dofs,elements,"
        "n_cut,l2_error,energy_error,kappa,iterations,rho_star,seconds");

  cutmg::BenchmarkRow row;
  row.example = "example3";
  row.variant = "lo";
  row.solver = "cg-smg";
  row.alpha1 = 1.0;
  row.alpha2 = 1e9;
  row.level = 2;
  row.depth = 4;
  row.ncoarse = 25;
  row.tol = 1e-12;
  row.dofs = 41531;
  row.elements = 81130;
  row.n_cut = 1130;
  row.l2_error = 1.25e-6;
  row.iterations = 7;
  row.seconds = 1.25;
  const std::string line = cutmg::csv_line(row);
  CHECK(line ==
        "example3,lo,cg-smg,1,1e+09,2,4,25,0,1e-12,41531,81130,1130,1.250000000000e-06,,,7,,"
        "1.250");

  std::ostringstream out;
  cutmg::write_csv({}, out);
  CHECK(out.str() == cutmg::csv_header() + "\n");
  std::ostringstream two;
  cutmg::write_csv({row}, two);
  CHECK(two.str() == cutmg::csv_header() + "\n" + line + "\n");
}

TEST_CASE("geometry stacks share dof counts with the published table") {
  const auto line = cutmg::build_geometry(
      cutmg::InterfaceSet::vertical_line(cutmg::benchmark_line_offset()), 25, 3);
  CHECK(line.depth() == 3);
  CHECK(line.levels[0].mesh.n() == 25);
  CHECK(line.finest().mesh.n() == 100);
  CHECK(line.finest().space.n_dofs() == 10403);
  CHECK(line.transfers.size() == 2);
  CHECK(line.n_flagged == 0);

  // One stripe interface has the same counts as the benchmark line.
  const auto multi = cutmg::build_geometry(
      cutmg::InterfaceSet::vertical_lines(cutmg::multi_interface_offsets(1)), 25, 3);
  CHECK(multi.finest().space.n_dofs() == 10403);
  CHECK(multi.n_flagged == 0);
}

TEST_CASE("run configuration is validated before any work") {
  RunConfig config;
  CHECK_THROWS_AS(cutmg::run_benchmark(config), cutmg::ConfigError);  // no example
  config.example = "example9";
  CHECK_THROWS_AS(cutmg::run_benchmark(config), cutmg::ConfigError);
  config.example = "example2";
  config.alpha1 = -1.0;
  CHECK_THROWS_AS(cutmg::run_benchmark(config), cutmg::ConfigError);
  config.alpha1 = 1e-5;
  config.fem = true;
  CHECK_THROWS_AS(cutmg::run_benchmark(config), cutmg::ConfigError);
  config.fem = false;
  config.variant = "evil";
  CHECK_THROWS_AS(cutmg::run_benchmark(config), cutmg::ConfigError);
  config.variant = "ev";
  config.solver = "sor";
  CHECK_THROWS_AS(cutmg::run_benchmark(config), cutmg::ConfigError);
  config.solver = "cg-smg";
  config.tol = 0.0;
  CHECK_THROWS_AS(cutmg::run_benchmark(config), cutmg::ConfigError);
  config.tol = 1e-12;
  config.finest = 7;
  CHECK_THROWS_AS(cutmg::run_benchmark(config), cutmg::ConfigError);
  config.finest = 1;
  config.levels = 4;  // deeper than the 100-cell grid allows for ncoarse 25
  CHECK_THROWS_AS(cutmg::run_benchmark(config), cutmg::ConfigError);

  RunConfig multi;
  multi.example = "multi";
  multi.finest = 1;
  multi.interfaces = "junk";
  CHECK_THROWS_AS(cutmg::run_benchmark(multi), cutmg::ConfigError);
  multi.interfaces = "12";
  CHECK_THROWS_AS(cutmg::run_benchmark(multi), cutmg::ConfigError);
  multi.interfaces = "2";
  multi.alpha1 = 2.0;  // stripe problem fixes unit coefficients
  CHECK_THROWS_AS(cutmg::run_benchmark(multi), cutmg::ConfigError);
}

TEST_CASE("a small benchmark run produces one complete row") {
  RunConfig config;
  config.example = "example1";
  config.variant = "ev";
  config.finest = 1;
  config.solver = "cg-smg";
  const auto rows = cutmg::run_benchmark(config);
  REQUIRE(rows.size() == 1);
  const auto& row = rows[0];
  CHECK(row.example == "example1");
  CHECK(row.variant == "ev");
  CHECK(row.solver == "cg-smg");
  CHECK(row.level == 1);
  CHECK(row.depth == 3);
  CHECK(row.ncoarse == 25);
  CHECK(row.dofs == 10403);
  CHECK(row.elements == 20200);
  CHECK(row.n_cut == 200);
  REQUIRE(row.l2_error.has_value());
  CHECK(*row.l2_error > 0);
  REQUIRE(row.energy_error.has_value());
  CHECK(*row.energy_error > 0);
  CHECK_FALSE(row.kappa.has_value());
  CHECK(row.iterations >= 3);
  CHECK(row.iterations <= 15);
  CHECK(row.seconds >= 0);
}
