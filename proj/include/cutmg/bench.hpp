#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cutmg/assembly.hpp"
#include "cutmg/multigrid.hpp"
#include "cutmg/problem.hpp"
#include "cutmg/report.hpp"
#include "cutmg/space.hpp"
#include "cutmg/transfer.hpp"

namespace cutmg {

/// Squares per side of benchmark level l >= 1; level 1 is the 100x100 grid,
/// every level doubles it.
int level_cells(int level);

/// Hierarchy depth that puts the coarsest mesh at n_coarse squares per side.
/// Throws ConfigError unless n_finest = n_coarse * 2^k.
int derive_depth(int n_finest, int n_coarse);

/// One level of a discretized interface configuration.
struct GeometryLevel {
  TriMesh mesh;
  CutDecomposition cut;
  EnrichedSpace space;
};

/// Nested discretization of one interface configuration, coarsest first,
/// with prolongations between consecutive levels. Independent of the variant
/// and the coefficients, so one stack serves every assembly and solver on
/// that geometry.
struct GeometryStack {
  std::vector<GeometryLevel> levels;
  std::vector<SparseMatrix> transfers;  // [l] prolongates level l to l+1
  Index n_flagged = 0;                  // flagged transfer rows over all pairs

  const GeometryLevel& finest() const { return levels.back(); }
  int depth() const { return static_cast<int>(levels.size()); }
};

GeometryStack build_geometry(const InterfaceSet& interfaces, int n_coarse, int n_levels);

enum class SolverKind { cg_jacobi, cg_sgs, cg_smg, smg };
SolverKind parse_solver(const std::string& name);
std::string solver_name(SolverKind solver);

struct CellOptions {
  Variant variant = Variant::ev;
  SolverKind solver = SolverKind::cg_smg;
  Scalar tol = 1e-12;
  bool errors = true;
  bool kappa = false;
  int depth = 0;  // hierarchy depth for multigrid; 0 = full stack
  int max_iters = 50000;
  std::string dump_matrix;  // MatrixMarket path for the eliminated matrix
};

struct CellResult {
  Vector u;
  SolveReport report;
  std::optional<ErrorNorms> errors;
  std::optional<Scalar> kappa;
  Index dofs = 0;
  AssemblyStats stats;
};

/// Assembles the problem at the stack's finest level, eliminates the
/// Dirichlet boundary, solves with the chosen method, and optionally
/// computes discretization errors and the condition number.
CellResult run_cell(const Problem& problem, const GeometryStack& geometry,
                    const CellOptions& options);

/// Condition number of an eliminated system matrix: Lanczos on A for the
/// largest eigenvalue and on A^{-1} for the smallest. Up to the direct-solve
/// size limit the inverse is a factorization; beyond it, hierarchy must be
/// non-null and the inverse is applied by multigrid-preconditioned CG.
Scalar estimate_condition(const SparseMatrix& A, const MultigridHierarchy* hierarchy);

/// Benchmark invocation: one example swept over levels (and variants or
/// interface counts), solved with one method.
struct RunConfig {
  std::string example;  // example1|example2|example3|multi
  std::string variant = "all";       // ev|lo|gp|all
  Scalar alpha1 = 1.0;
  Scalar alpha2 = 1.0;
  int finest = 3;    // finest benchmark level
  int levels = 0;    // hierarchy depth; 0 derives it from ncoarse
  std::string solver = "cg-smg";
  int ncoarse = 25;  // coarsest cells per side when levels == 0
  std::string interfaces = "all";  // multi only: a count or "all"
  std::string out;                 // CSV path; empty = stdout
  Scalar tol = 1e-12;
  bool kappa = false;
  bool errors = true;
  bool fem = false;  // example1 only: fitted mesh without the interface
  bool l5 = false;   // raise the finest level to 5
  std::string dump_matrix;    // MatrixMarket path for the last run's matrix
  std::string dump_transfer;  // MatrixMarket path for the last run's transfer
};

/// Key=value configuration file: one pair per line, # comments, unknown keys
/// rejected. Values overwrite the corresponding RunConfig fields.
void apply_config_file(RunConfig& config, const std::string& path);

struct BenchmarkRow {
  std::string example;
  std::string variant;  // ev|lo|gp|fem
  std::string solver;
  Scalar alpha1 = 1;
  Scalar alpha2 = 1;
  int level = 1;       // benchmark level of this row
  int depth = 1;       // hierarchy depth used
  int ncoarse = 0;     // coarsest cells per side used
  int interfaces = 0;  // multi only; 0 otherwise
  Scalar tol = 1e-12;
  Index dofs = 0;
  Index elements = 0;  // element-subdomain pairs; cut elements count twice
  Index n_cut = 0;
  std::optional<Scalar> l2_error;
  std::optional<Scalar> energy_error;
  std::optional<Scalar> kappa;
  int iterations = 0;
  std::optional<Scalar> rho_star;
  double seconds = 0;
};

std::string csv_header();
std::string csv_line(const BenchmarkRow& row);

/// Writes header plus one line per row. Byte-identical for identical
/// configurations except for the seconds column.
void write_csv(const std::vector<BenchmarkRow>& rows, std::ostream& out);

/// Runs the configured benchmark and returns its rows in deterministic
/// order: levels ascending, then variants (ev, lo, gp) or interface counts
/// ascending.
std::vector<BenchmarkRow> run_benchmark(const RunConfig& config);

}  // namespace cutmg
