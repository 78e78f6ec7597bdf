// fpiter command line tool: reproduce the benchmark table, run and compare
// schemes on catalog maps, tabulate rate bounds, and solve the catalog
// integral equations.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fpiter/analysis.hpp"
#include "fpiter/catalog.hpp"
#include "fpiter/golden.hpp"
#include "fpiter/report.hpp"
#include "fpiter/schemes.hpp"
#include "fpiter/volterra_fredholm.hpp"

namespace {

using nlohmann::json;
using namespace fpiter;

constexpr int kExitOk = 0;
constexpr int kExitVerifyMismatch = 1;
constexpr int kExitInvalidConfig = 2;
constexpr int kExitNumericalFailure = 3;

struct OutputOpts {
  std::string format = "csv";
  std::string out;
  int precision = 10;

  char separator() const { return format == "tsv" ? '\t' : ','; }
};

void add_output_opts(CLI::App* cmd, OutputOpts& opts) {
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"csv", "tsv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", opts.out, "Output path (default: stdout)");
  cmd->add_option("--precision", opts.precision, "Printed decimals")
      ->check(CLI::Range(1, 17))
      ->capture_default_str();
}

void write_text(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open '" + path + "' for writing");
  os << content;
}

long long elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - start)
      .count();
}

// ---------------------------------------------------------------- table1

int cmd_table1(const OutputOpts& opts, bool verify,
               const std::string& plot_out) {
  auto start = std::chrono::steady_clock::now();
  BenchmarkTable table = compute_benchmark_table();

  if (verify) {
    std::optional<TableMismatch> mismatch = verify_benchmark_table();
    if (mismatch) {
      std::cerr << "table1 verification FAILED at row " << mismatch->row
                << " column '" << kBenchmarkColumnNames[mismatch->col]
                << "': expected " << format_fixed(mismatch->expected, 11)
                << ", actual " << format_fixed(mismatch->actual, 11) << "\n";
      return kExitVerifyMismatch;
    }
    std::cerr << "table1 verification passed: all " << kBenchmarkRows << "x"
              << kBenchmarkCols << " cells within "
              << kBenchmarkCellTol << "\n";
  }

  if (opts.format == "json") {
    json doc;
    doc["command"] = "table1";
    doc["columns"] = json::array({"Step"});
    for (const char* name : kBenchmarkColumnNames) doc["columns"].push_back(name);
    doc["precision"] = opts.precision;
    doc["rows"] = json::array();
    for (std::size_t r = 0; r < kBenchmarkRows; ++r) {
      json row = json::array({r + 1});
      for (double v : table[r]) row.push_back(v);
      doc["rows"].push_back(row);
    }
    doc["timing_ms"] = elapsed_ms(start);
    write_text(opts.out, doc.dump(2) + "\n");
  } else {
    TextTable tt;
    tt.headers = {"Step"};
    for (const char* name : kBenchmarkColumnNames) tt.headers.push_back(name);
    for (std::size_t r = 0; r < kBenchmarkRows; ++r) {
      std::vector<std::string> row = {std::to_string(r + 1)};
      for (double v : table[r]) row.push_back(format_fixed(v, opts.precision));
      tt.rows.push_back(std::move(row));
    }
    write_text(opts.out, render_delimited(tt, opts.separator()));
  }

  if (!plot_out.empty()) {
    TextTable tt;
    tt.headers = {"scheme", "step", "abs_error"};
    for (std::size_t col = 0; col < kBenchmarkCols; ++col) {
      for (std::size_t r = 0; r < kBenchmarkRows; ++r) {
        tt.rows.push_back(
            {std::string(to_string(kBenchmarkColumnSchemes[col])),
             std::to_string(r + 1),
             format_fixed(std::abs(table[r][col] - kBenchmarkFixedPoint), 15)});
      }
    }
    write_text(plot_out, render_delimited(tt, ','));
  }
  return kExitOk;
}

// ------------------------------------------------------------------- run

struct RunArgs {
  std::string scheme = "new";
  std::string map = "sqrt-quadratic";
  std::vector<double> x0 = {40.0};
  double delta = 0.95;
  double zeta = 0.30;
  double gamma = 0.90;
  double tol = 1e-10;
  std::size_t max_iters = 100;
};

void add_run_args(CLI::App* cmd, RunArgs& args, bool with_scheme = true) {
  if (with_scheme) {
    cmd->add_option("--scheme", args.scheme, "Iteration scheme")
        ->capture_default_str();
  }
  cmd->add_option("--map", args.map, "Catalog map key")->capture_default_str();
  cmd->add_option("--x0", args.x0, "Start point (one value per dimension)")
      ->capture_default_str();
  cmd->add_option("--delta", args.delta, "First-stage parameter")
      ->capture_default_str();
  cmd->add_option("--zeta", args.zeta, "Second-stage parameter")
      ->capture_default_str();
  cmd->add_option("--gamma", args.gamma, "Final-stage parameter")
      ->capture_default_str();
  cmd->add_option("--tol", args.tol, "Stopping tolerance")
      ->capture_default_str();
  cmd->add_option("--max-iters", args.max_iters, "Iterate budget")
      ->capture_default_str();
}

SchemeId parse_scheme(const std::string& name) {
  auto id = scheme_from_string(name);
  if (!id) throw ParameterError("unknown scheme '" + name + "'");
  return *id;
}

json trajectory_json(const Trajectory& tr) {
  json doc;
  doc["scheme"] = std::string(to_string(tr.scheme));
  doc["stop_reason"] = std::string(to_string(tr.stop_reason));
  doc["steps"] = tr.steps();
  doc["mapping_evals"] = tr.mapping_evals;
  doc["iterates"] = json::array();
  for (const Point& p : tr.iterates) {
    if (p.dim() == 1) {
      doc["iterates"].push_back(p[0]);
    } else {
      doc["iterates"].push_back(p.values());
    }
  }
  doc["residuals"] = tr.residuals;
  if (tr.errors) doc["errors"] = *tr.errors;
  return doc;
}

int cmd_run(const OutputOpts& opts, const RunArgs& args) {
  auto start = std::chrono::steady_clock::now();
  SchemeId scheme = parse_scheme(args.scheme);
  MappingSpec map = make_map(args.map);
  Point x0 = map.space.make(args.x0);
  ParamSchedule schedule =
      ParamSchedule::constants(args.delta, args.zeta, args.gamma);
  Trajectory tr = run(scheme, map, x0, schedule, {args.tol, args.max_iters});

  if (opts.format == "json") {
    json doc;
    doc["command"] = "run";
    doc["config"] = {{"scheme", args.scheme}, {"map", args.map},
                     {"x0", args.x0},         {"delta", args.delta},
                     {"zeta", args.zeta},     {"gamma", args.gamma},
                     {"tol", args.tol},       {"max_iters", args.max_iters}};
    doc["results"] = trajectory_json(tr);
    doc["timing_ms"] = elapsed_ms(start);
    write_text(opts.out, doc.dump(2) + "\n");
  } else {
    TextTable tt;
    tt.headers = {"step"};
    std::size_t dim = tr.iterates.front().dim();
    if (dim == 1) {
      tt.headers.push_back("x");
    } else {
      for (std::size_t i = 0; i < dim; ++i) {
        tt.headers.push_back("x_" + std::to_string(i));
      }
    }
    tt.headers.push_back("residual");
    if (tr.errors) tt.headers.push_back("error");
    for (std::size_t n = 0; n < tr.steps(); ++n) {
      std::vector<std::string> row = {std::to_string(n + 1)};
      for (std::size_t i = 0; i < dim; ++i) {
        row.push_back(format_fixed(tr.iterates[n][i], opts.precision));
      }
      row.push_back(format_fixed(tr.residuals[n], 15));
      if (tr.errors) row.push_back(format_fixed((*tr.errors)[n], 15));
      tt.rows.push_back(std::move(row));
    }
    write_text(opts.out, render_delimited(tt, opts.separator()));
  }
  return tr.stop_reason == StopReason::Diverged ? kExitNumericalFailure
                                                : kExitOk;
}

// --------------------------------------------------------------- compare

int cmd_compare(const OutputOpts& opts, const RunArgs& args,
                const std::vector<std::string>& schemes) {
  auto start = std::chrono::steady_clock::now();
  if (schemes.size() != 2) {
    throw ParameterError("compare needs exactly two --scheme options");
  }
  SchemeId id_a = parse_scheme(schemes[0]);
  SchemeId id_b = parse_scheme(schemes[1]);
  MappingSpec map = make_map(args.map);
  if (!map.known_fixed_point) {
    throw ParameterError("compare needs a map with a known fixed point");
  }
  Point x0 = map.space.make(args.x0);
  ParamSchedule schedule =
      ParamSchedule::constants(args.delta, args.zeta, args.gamma);
  StopRule stop{args.tol, args.max_iters};

  Trajectory ta = run(id_a, map, x0, schedule, stop);
  Trajectory tb = run(id_b, map, x0, schedule, stop);
  ComparisonReport rep = empirical_compare(ta, tb, *map.known_fixed_point);

  auto steps_to_tol = [&](const Trajectory& tr) -> json {
    auto s = tr.first_step_at_tol(args.tol);
    return s ? json(*s) : json(nullptr);
  };

  if (opts.format == "json") {
    json doc;
    doc["command"] = "compare";
    doc["config"] = {{"schemes", schemes}, {"map", args.map},
                     {"x0", args.x0},      {"delta", args.delta},
                     {"zeta", args.zeta},  {"gamma", args.gamma},
                     {"tol", args.tol},    {"max_iters", args.max_iters}};
    doc["results"]["verdict"] = std::string(to_string(rep.verdict));
    doc["results"]["ratio_sequence"] = rep.ratio_sequence;
    doc["results"]["a"] = {{"scheme", std::string(to_string(id_a))},
                           {"steps_to_tol", steps_to_tol(ta)},
                           {"stop_reason", std::string(to_string(ta.stop_reason))},
                           {"mapping_evals", ta.mapping_evals},
                           {"evals_per_step", mapping_evals_per_step(id_a)}};
    doc["results"]["b"] = {{"scheme", std::string(to_string(id_b))},
                           {"steps_to_tol", steps_to_tol(tb)},
                           {"stop_reason", std::string(to_string(tb.stop_reason))},
                           {"mapping_evals", tb.mapping_evals},
                           {"evals_per_step", mapping_evals_per_step(id_b)}};
    doc["timing_ms"] = elapsed_ms(start);
    write_text(opts.out, doc.dump(2) + "\n");
  } else {
    TextTable tt;
    tt.headers = {"step", "error_a", "error_b", "ratio"};
    const auto& ea = *ta.errors;
    const auto& eb = *tb.errors;
    for (std::size_t n = 0; n < rep.ratio_sequence.size(); ++n) {
      tt.rows.push_back({std::to_string(n + 1), format_fixed(ea[n], 15),
                         format_fixed(eb[n], 15),
                         format_fixed(rep.ratio_sequence[n], 15)});
    }
    std::string body = render_delimited(tt, opts.separator());
    body += "# verdict";
    body += opts.separator();
    body += std::string(to_string(rep.verdict));
    body += '\n';
    write_text(opts.out, body);
  }
  return kExitOk;
}

// ---------------------------------------------------------------- bounds

struct BoundsArgs {
  double xi = std::nan("");
  double theta = std::nan("");
  double delta = 0.95;
  double zeta = 0.5;
  double e1 = 1.0;
  double e1_thakur = 1.0;
  std::size_t n_max = 50;
};

int cmd_bounds(const OutputOpts& opts, const BoundsArgs& args) {
  TextTable tt;
  if (!std::isnan(args.theta)) {
    std::vector<double> deltas(args.n_max + 1, args.delta);
    std::vector<BoundPair> bounds = bound_56(args.e1, args.theta, deltas);
    tt.headers = {"n", "product_bound", "exponential_bound"};
    for (std::size_t n = 0; n < bounds.size(); ++n) {
      tt.rows.push_back({std::to_string(n),
                         format_fixed(bounds[n].product, opts.precision),
                         format_fixed(bounds[n].exponential, opts.precision)});
    }
  } else if (!std::isnan(args.xi)) {
    tt.headers = {"n", "bound_new", "bound_thakur", "ratio"};
    for (std::size_t n = 0; n <= args.n_max; ++n) {
      tt.rows.push_back(
          {std::to_string(n),
           format_fixed(bound_new(args.xi, args.delta, args.e1, n),
                        opts.precision),
           format_fixed(bound_thakur(args.xi, args.delta, args.zeta,
                                     args.e1_thakur, n),
                        opts.precision),
           format_fixed(theoretical_ratio(args.xi, args.delta, args.zeta,
                                          args.e1, args.e1_thakur, n),
                        opts.precision)});
    }
  } else {
    throw ParameterError("bounds needs either --xi or --theta");
  }

  if (opts.format == "json") {
    json doc;
    doc["command"] = "bounds";
    doc["columns"] = tt.headers;
    doc["rows"] = json::array();
    for (const auto& row : tt.rows) doc["rows"].push_back(row);
    write_text(opts.out, doc.dump(2) + "\n");
  } else {
    write_text(opts.out, render_delimited(tt, opts.separator()));
  }
  return kExitOk;
}

// -------------------------------------------------------- solve-integral

struct SolveArgs {
  std::string problem = "mvf-linear-1d";
  std::vector<std::size_t> nodes = {65};
  std::string rule = "simpson";
  double delta = 0.95;
  double tol = 1e-8;
  std::size_t max_iters = 200;
  unsigned threads = 1;
  std::string report_path;
};

int cmd_solve_integral(const OutputOpts& opts, const SolveArgs& args) {
  auto start = std::chrono::steady_clock::now();
  IntegralProblem problem = make_problem(args.problem);

  auto rule = quad_rule_from_string(args.rule);
  if (!rule) throw ParameterError("unknown quadrature rule '" + args.rule + "'");

  std::vector<std::size_t> nodes = args.nodes;
  if (nodes.size() == 1 && problem.dims() > 1) {
    nodes.assign(problem.dims(), nodes[0]);
  }
  if (nodes.size() != problem.dims()) {
    throw ParameterError("--nodes needs one count per problem dimension");
  }
  QuadratureGrid grid(problem.box, nodes, *rule);

  ParamSchedule schedule = ParamSchedule::constants(args.delta, 0.5, 0.5);
  std::vector<double> c0(grid.total_nodes(), 0.0);
  SolveResult result = solve(problem, grid, schedule, c0,
                             {args.tol, args.max_iters, args.threads});

  // solution as node coordinates plus value
  TextTable tt;
  for (std::size_t ax = 0; ax < grid.dims(); ++ax) {
    tt.headers.push_back("t_" + std::to_string(ax));
  }
  tt.headers.push_back("value");
  std::vector<double> coords(grid.dims());
  for (std::size_t flat = 0; flat < grid.total_nodes(); ++flat) {
    grid.node_coords(flat, coords);
    std::vector<std::string> row;
    for (double c : coords) row.push_back(format_fixed(c, opts.precision));
    row.push_back(format_fixed(result.solution[flat], opts.precision));
    tt.rows.push_back(std::move(row));
  }
  write_text(opts.out, render_delimited(tt, opts.separator()));

  json doc;
  doc["command"] = "solve-integral";
  doc["config"] = {{"problem", args.problem}, {"nodes", nodes},
                   {"rule", args.rule},       {"delta", args.delta},
                   {"tol", args.tol},         {"max_iters", args.max_iters},
                   {"threads", args.threads}};
  doc["results"] = {{"theta", result.theta},
                    {"converged", result.converged},
                    {"iterations", result.trajectory.steps()},
                    {"achieved_residual", result.achieved_residual},
                    {"stop_reason",
                     std::string(to_string(result.trajectory.stop_reason))},
                    {"residual_history", result.trajectory.residuals},
                    {"warnings", result.warnings}};
  if (result.trajectory.errors) {
    doc["results"]["error_history"] = *result.trajectory.errors;
    doc["results"]["bound_history"] = result.error_bounds;
  }
  doc["timing_ms"] = elapsed_ms(start);
  if (!args.report_path.empty()) {
    write_text(args.report_path, doc.dump(2) + "\n");
  }

  if (!result.converged) {
    std::cerr << "solve-integral did not reach tol "
              << format_fixed(args.tol, 12) << " within " << args.max_iters
              << " iterations (stop: "
              << to_string(result.trajectory.stop_reason) << ")\n";
    return kExitNumericalFailure;
  }
  return kExitOk;
}

// ------------------------------------------------------------------ list

int cmd_list() {
  std::cout << "schemes:";
  for (SchemeId id : kAllSchemes) std::cout << " " << to_string(id);
  std::cout << "\nmaps:";
  for (const auto& k : map_catalog_keys()) std::cout << " " << k;
  std::cout << "\nproblems:";
  for (const auto& k : problem_catalog_keys()) std::cout << " " << k;
  std::cout << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fixed-point iteration toolkit"};
  app.require_subcommand(1);

  OutputOpts table1_opts;
  bool verify = false;
  std::string plot_out;
  auto* table1_cmd = app.add_subcommand(
      "table1", "Reproduce the benchmark comparison table");
  add_output_opts(table1_cmd, table1_opts);
  table1_cmd->add_flag("--verify", verify,
                       "Check every cell against the golden table");
  table1_cmd->add_option("--plot-out", plot_out,
                         "Write per-scheme (step, abs error) series here");

  OutputOpts run_opts;
  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "Run one scheme on a catalog map");
  add_output_opts(run_cmd, run_opts);
  add_run_args(run_cmd, run_args);

  OutputOpts compare_opts;
  RunArgs compare_args;
  compare_args.tol = 5e-12;
  std::vector<std::string> compare_schemes;
  auto* compare_cmd =
      app.add_subcommand("compare", "Race two schemes on the same map");
  add_output_opts(compare_cmd, compare_opts);
  compare_cmd
      ->add_option("--scheme", compare_schemes, "Scheme (give twice)")
      ->expected(2);
  add_run_args(compare_cmd, compare_args, /*with_scheme=*/false);

  OutputOpts bounds_opts;
  BoundsArgs bounds_args;
  auto* bounds_cmd =
      app.add_subcommand("bounds", "Tabulate the closed-form rate bounds");
  add_output_opts(bounds_cmd, bounds_opts);
  bounds_cmd->add_option("--xi", bounds_args.xi, "Contraction factor");
  bounds_cmd->add_option("--theta", bounds_args.theta,
                         "Integral-operator contraction constant");
  bounds_cmd->add_option("--delta", bounds_args.delta, "Schedule constant")
      ->capture_default_str();
  bounds_cmd->add_option("--zeta", bounds_args.zeta, "Schedule constant")
      ->capture_default_str();
  bounds_cmd->add_option("--e1", bounds_args.e1, "Initial error")
      ->capture_default_str();
  bounds_cmd
      ->add_option("--e1-thakur", bounds_args.e1_thakur,
                   "Initial error of the comparison scheme")
      ->capture_default_str();
  bounds_cmd->add_option("--n-max", bounds_args.n_max, "Last step index")
      ->capture_default_str();

  OutputOpts solve_opts;
  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand(
      "solve-integral", "Solve a catalog integral equation");
  add_output_opts(solve_cmd, solve_opts);
  solve_cmd->add_option("--problem", solve_args.problem, "Catalog problem key")
      ->capture_default_str();
  solve_cmd
      ->add_option("--nodes", solve_args.nodes,
                   "Nodes per axis (one value, or one per axis)")
      ->capture_default_str();
  solve_cmd->add_option("--rule", solve_args.rule, "Quadrature rule")
      ->check(CLI::IsMember({"trapezoid", "simpson"}))
      ->capture_default_str();
  solve_cmd->add_option("--delta", solve_args.delta, "Schedule constant")
      ->capture_default_str();
  solve_cmd->add_option("--tol", solve_args.tol, "Residual tolerance")
      ->capture_default_str();
  solve_cmd->add_option("--max-iters", solve_args.max_iters, "Iterate budget")
      ->capture_default_str();
  solve_cmd->add_option("--threads", solve_args.threads, "Worker threads")
      ->capture_default_str();
  solve_cmd->add_option("--report", solve_args.report_path,
                        "Write the JSON run report here");

  auto* list_cmd =
      app.add_subcommand("list", "List schemes, maps, and problems");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInvalidConfig;
  }

  try {
    if (*table1_cmd) return cmd_table1(table1_opts, verify, plot_out);
    if (*run_cmd) return cmd_run(run_opts, run_args);
    if (*compare_cmd)
      return cmd_compare(compare_opts, compare_args, compare_schemes);
    if (*bounds_cmd) return cmd_bounds(bounds_opts, bounds_args);
    if (*solve_cmd) return cmd_solve_integral(solve_opts, solve_args);
    if (*list_cmd) return cmd_list();
  } catch (const NotAContractionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumericalFailure;
  } catch (const EvaluationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumericalFailure;
  } catch (const DomainViolationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumericalFailure;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidConfig;
  }
  return kExitInvalidConfig;
}
