#include "cutmg/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>

#include "cutmg/krylov.hpp"
#include "cutmg/sparse.hpp"

namespace cutmg {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

int to_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(value, &pos);
    if (pos == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(key + ": expected an integer, got '" + value + "'");
}

Scalar to_scalar(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const Scalar v = std::stod(value, &pos);
    if (pos == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(key + ": expected a number, got '" + value + "'");
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "yes" || value == "on") return true;
  if (value == "0" || value == "false" || value == "no" || value == "off") return false;
  throw ConfigError(key + ": expected a boolean, got '" + value + "'");
}

void assign_config(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "example")
    c.example = value;
  else if (key == "variant")
    c.variant = value;
  else if (key == "alpha1")
    c.alpha1 = to_scalar(key, value);
  else if (key == "alpha2")
    c.alpha2 = to_scalar(key, value);
  else if (key == "finest")
    c.finest = to_int(key, value);
  else if (key == "levels")
    c.levels = to_int(key, value);
  else if (key == "solver")
    c.solver = value;
  else if (key == "ncoarse")
    c.ncoarse = to_int(key, value);
  else if (key == "interfaces")
    c.interfaces = value;
  else if (key == "out")
    c.out = value;
  else if (key == "tol")
    c.tol = to_scalar(key, value);
  else if (key == "kappa")
    c.kappa = to_bool(key, value);
  else if (key == "errors")
    c.errors = to_bool(key, value);
  else if (key == "fem")
    c.fem = to_bool(key, value);
  else if (key == "l5")
    c.l5 = to_bool(key, value);
  else if (key == "dump_matrix")
    c.dump_matrix = value;
  else if (key == "dump_transfer")
    c.dump_transfer = value;
  else
    throw ConfigError("unknown config key '" + key + "'");
}

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

std::string opt_sci(const std::optional<Scalar>& v) {
  return v ? fmt("%.12e", *v) : std::string();
}

}  // namespace

int level_cells(int level) {
  if (level < 1 || level > 5) throw ConfigError("benchmark level must be between 1 and 5");
  return 100 << (level - 1);
}

int derive_depth(int n_finest, int n_coarse) {
  int depth = 1;
  int n = n_finest;
  while (n > n_coarse && n % 2 == 0) {
    n /= 2;
    ++depth;
  }
  if (n != n_coarse)
    throw ConfigError("finest mesh (" + std::to_string(n_finest) +
                      " cells) is not a power-of-two refinement of ncoarse=" +
                      std::to_string(n_coarse));
  return depth;
}

GeometryStack build_geometry(const InterfaceSet& interfaces, int n_coarse, int n_levels) {
  const MeshHierarchy meshes = build_hierarchy(n_coarse, n_levels);
  GeometryStack stack;
  stack.levels.reserve(meshes.levels.size());
  for (const TriMesh& mesh : meshes.levels) {
    CutDecomposition cut = classify_and_cut(mesh, interfaces);
    EnrichedSpace space(mesh, cut);
    stack.levels.push_back(GeometryLevel{mesh, std::move(cut), std::move(space)});
  }
  for (int l = 0; l + 1 < stack.depth(); ++l) {
    const GeometryLevel& coarse = stack.levels[l];
    const GeometryLevel& fine = stack.levels[l + 1];
    Transfer transfer = build_transfer(fine.mesh, fine.cut, fine.space, coarse.mesh,
                                       coarse.cut, coarse.space);
    stack.n_flagged += static_cast<Index>(transfer.flagged_rows.size());
    stack.transfers.push_back(std::move(transfer.T));
  }
  return stack;
}

SolverKind parse_solver(const std::string& name) {
  if (name == "cg-jacobi") return SolverKind::cg_jacobi;
  if (name == "cg-sgs") return SolverKind::cg_sgs;
  if (name == "cg-smg") return SolverKind::cg_smg;
  if (name == "smg") return SolverKind::smg;
  throw ConfigError("unknown solver '" + name +
                    "' (expected cg-jacobi, cg-sgs, cg-smg or smg)");
}

std::string solver_name(SolverKind solver) {
  switch (solver) {
    case SolverKind::cg_jacobi: return "cg-jacobi";
    case SolverKind::cg_sgs: return "cg-sgs";
    case SolverKind::cg_smg: return "cg-smg";
    case SolverKind::smg: return "smg";
  }
  return "?";
}

CellResult run_cell(const Problem& problem, const GeometryStack& geometry,
                    const CellOptions& options) {
  const GeometryLevel& fin = geometry.finest();
  AssemblyOptions assembly_options;
  assembly_options.variant = options.variant;
  System system = assemble_system(fin.mesh, fin.cut, fin.space, problem, assembly_options);
  apply_dirichlet(system, fin.mesh, fin.space, problem);

  const int depth = options.depth == 0 ? geometry.depth() : options.depth;
  if (depth < 1 || depth > geometry.depth())
    throw ConfigError("hierarchy depth " + std::to_string(depth) +
                      " exceeds the geometry stack (" + std::to_string(geometry.depth()) + ")");

  const bool needs_hierarchy =
      options.solver == SolverKind::cg_smg || options.solver == SolverKind::smg ||
      (options.kappa && system.A.rows() > DirectSolver::kDefaultMaxDofs);
  std::optional<MultigridHierarchy> hierarchy;
  if (needs_hierarchy) {
    if (depth < 2)
      throw ConfigError("multigrid needs a hierarchy depth of at least 2");
    std::vector<SparseMatrix> tail(geometry.transfers.end() - (depth - 1),
                                   geometry.transfers.end());
    hierarchy.emplace(setup_multigrid(system.A, std::move(tail), {}));
  }

  SolveResult solved = [&]() -> SolveResult {
    switch (options.solver) {
      case SolverKind::cg_jacobi:
        return cg(system.A, system.b, jacobi_preconditioner(system.A), options.tol,
                  options.max_iters);
      case SolverKind::cg_sgs:
        return cg(system.A, system.b, sgs_preconditioner(system.A), options.tol,
                  options.max_iters);
      case SolverKind::cg_smg:
        return cg(
            system.A, system.b,
            [&hierarchy](const Vector& r) { return v_cycle(*hierarchy, r); }, options.tol,
            options.max_iters);
      case SolverKind::smg:
        return solve_stationary(*hierarchy, system.b, options.tol,
                                std::min(options.max_iters, 200));
    }
    throw ConfigError("unknown solver kind");
  }();

  CellResult out;
  out.u = std::move(solved.u);
  out.report = std::move(solved.report);
  out.dofs = fin.space.n_dofs();
  out.stats = system.stats;
  if (options.errors)
    out.errors = compute_errors(fin.mesh, fin.cut, fin.space, problem, out.u, options.variant);
  if (options.kappa)
    out.kappa = estimate_condition(system.A, hierarchy ? &*hierarchy : nullptr);
  if (!options.dump_matrix.empty()) write_matrix_market(system.A, options.dump_matrix);
  return out;
}

Scalar estimate_condition(const SparseMatrix& A, const MultigridHierarchy* hierarchy) {
  if (A.rows() <= DirectSolver::kDefaultMaxDofs) return extremal_eigs(A).condition();
  if (!hierarchy)
    throw ConfigError("condition estimate beyond the direct-solve limit needs a hierarchy");
  const InverseApply inverse = [&A, hierarchy](const Vector& v) {
    return cg(
               A, v, [hierarchy](const Vector& r) { return v_cycle(*hierarchy, r); }, 1e-12,
               1000)
        .u;
  };
  return extremal_eigs(A, 1e-8, 150, inverse).condition();
}

void apply_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
    assign_config(config, trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
  }
}

std::string csv_header() {
  return "example,variant,solver,alpha1,alpha2,level,depth,ncoarse,interfaces,tol,dofs,"
         "elements,n_cut,l2_error,energy_error,kappa,iterations,rho_star,seconds";
}

std::string csv_line(const BenchmarkRow& r) {
  std::string line;
  line += r.example + ',' + r.variant + ',' + r.solver + ',';
  line += fmt("%g", r.alpha1) + ',' + fmt("%g", r.alpha2) + ',';
  line += std::to_string(r.level) + ',' + std::to_string(r.depth) + ',';
  line += std::to_string(r.ncoarse) + ',' + std::to_string(r.interfaces) + ',';
  line += fmt("%g", r.tol) + ',';
  line += std::to_string(r.dofs) + ',' + std::to_string(r.elements) + ',' +
          std::to_string(r.n_cut) + ',';
  line += opt_sci(r.l2_error) + ',' + opt_sci(r.energy_error) + ',' + opt_sci(r.kappa) + ',';
  line += std::to_string(r.iterations) + ',' + opt_sci(r.rho_star) + ',';
  line += fmt("%.3f", r.seconds);
  return line;
}

void write_csv(const std::vector<BenchmarkRow>& rows, std::ostream& out) {
  out << csv_header() << '\n';
  for (const BenchmarkRow& row : rows) out << csv_line(row) << '\n';
}

namespace {

struct LevelPlan {
  int level = 1;
  int n = 100;
  int depth = 1;
};

LevelPlan plan_level(const RunConfig& c, int level) {
  LevelPlan plan;
  plan.level = level;
  plan.n = level_cells(level);
  if (c.levels > 0) {
    const int shift = c.levels - 1;
    if (shift >= 30 || plan.n % (1 << shift) != 0)
      throw ConfigError("level " + std::to_string(level) + " (" + std::to_string(plan.n) +
                        " cells) does not support a depth-" + std::to_string(c.levels) +
                        " hierarchy");
    plan.depth = c.levels;
  } else {
    plan.depth = derive_depth(plan.n, c.ncoarse);
  }
  return plan;
}

BenchmarkRow make_row(const RunConfig& c, const std::string& variant_label,
                      const LevelPlan& plan, int interfaces, const GeometryStack& geometry,
                      const CellResult& cell) {
  BenchmarkRow row;
  row.example = c.example;
  row.variant = variant_label;
  row.solver = c.solver;
  row.alpha1 = c.alpha1;
  row.alpha2 = c.alpha2;
  row.level = plan.level;
  row.depth = plan.depth;
  row.ncoarse = plan.n >> (plan.depth - 1);
  row.interfaces = interfaces;
  row.tol = c.tol;
  row.dofs = cell.dofs;
  // Element-subdomain pairs: every cut element is active in both subdomains.
  row.elements = geometry.finest().mesh.n_triangles() + cell.stats.n_cut;
  row.n_cut = cell.stats.n_cut;
  if (cell.errors) {
    row.l2_error = cell.errors->l2;
    row.energy_error = cell.errors->energy;
  }
  row.kappa = cell.kappa;
  row.iterations = cell.report.iterations;
  row.rho_star = cell.report.rho_star;
  row.seconds = cell.report.seconds;
  return row;
}

std::vector<int> parse_interfaces(const std::string& value) {
  if (value == "all") return {1, 2, 4, 6, 8, 10};
  const int k = to_int("interfaces", value);
  if (k < 1 || k > 10) throw ConfigError("interfaces must be between 1 and 10");
  return {k};
}

}  // namespace

std::vector<BenchmarkRow> run_benchmark(const RunConfig& config) {
  RunConfig c = config;
  if (c.l5) c.finest = 5;
  if (c.finest < 1 || c.finest > 5) throw ConfigError("finest level must be between 1 and 5");
  if (!(c.alpha1 > 0) || !(c.alpha2 > 0)) throw ConfigError("coefficients must be positive");
  if (!(c.tol > 0)) throw ConfigError("tolerance must be positive");
  if (c.ncoarse < 1) throw ConfigError("ncoarse must be at least 1");
  if (c.levels < 0) throw ConfigError("levels must be non-negative");
  const SolverKind solver = parse_solver(c.solver);
  if (c.fem && c.example != "example1")
    throw ConfigError("the fitted-mesh run applies to example1 only");

  const bool continuous = c.example == "example1" || c.example == "multi";
  if (continuous && (c.alpha1 != 1.0 || c.alpha2 != 1.0))
    throw ConfigError(c.example + " uses continuous unit coefficients");

  std::vector<Variant> variants;
  if (c.fem)
    variants = {Variant::ev};  // no cut elements; the variant never acts
  else if (c.variant == "all")
    variants = {Variant::ev, Variant::lo, Variant::gp};
  else
    variants = {parse_variant(c.variant)};

  const auto make_problem = [&c](int interfaces) -> Problem {
    if (c.fem) return example1_fitted();
    if (c.example == "example1") return example1();
    if (c.example == "example2") return example2(c.alpha1, c.alpha2);
    if (c.example == "example3") return example3(c.alpha2, c.alpha1);
    if (c.example == "multi") return example1_multi(interfaces);
    throw ConfigError("unknown example '" + c.example +
                      "' (expected example1, example2, example3 or multi)");
  };
  if (c.example != "example1" && c.example != "example2" && c.example != "example3" &&
      c.example != "multi")
    throw ConfigError("unknown example '" + c.example +
                      "' (expected example1, example2, example3 or multi)");

  std::vector<BenchmarkRow> rows;
  const auto run_variants = [&](const Problem& problem, const LevelPlan& plan, int interfaces,
                                const GeometryStack& geometry, bool is_finest) {
    for (std::size_t vi = 0; vi < variants.size(); ++vi) {
      CellOptions options;
      options.variant = variants[vi];
      options.solver = solver;
      options.tol = c.tol;
      options.errors = c.errors;
      options.kappa = c.kappa;
      if (is_finest && vi + 1 == variants.size()) options.dump_matrix = c.dump_matrix;
      const CellResult cell = run_cell(problem, geometry, options);
      const std::string label = c.fem ? "fem" : variant_name(variants[vi]);
      rows.push_back(make_row(c, label, plan, interfaces, geometry, cell));
    }
    if (is_finest && !c.dump_transfer.empty() && !geometry.transfers.empty())
      write_matrix_market(geometry.transfers.back(), c.dump_transfer);
  };

  if (c.example == "multi") {
    const LevelPlan plan = plan_level(c, c.finest);
    for (const int k : parse_interfaces(c.interfaces)) {
      const Problem problem = make_problem(k);
      const GeometryStack geometry =
          build_geometry(problem.interfaces, plan.n >> (plan.depth - 1), plan.depth);
      run_variants(problem, plan, k, geometry, true);
    }
  } else {
    const Problem problem = make_problem(0);
    for (int level = 1; level <= c.finest; ++level) {
      const LevelPlan plan = plan_level(c, level);
      const GeometryStack geometry =
          build_geometry(problem.interfaces, plan.n >> (plan.depth - 1), plan.depth);
      run_variants(problem, plan, 0, geometry, level == c.finest);
    }
  }
  return rows;
}

}  // namespace cutmg
