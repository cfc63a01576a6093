#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sketchls/bounds.hpp"
#include "sketchls/dense.hpp"
#include "sketchls/errors.hpp"
#include "sketchls/harness.hpp"
#include "sketchls/io.hpp"
#include "sketchls/probgen.hpp"
#include "sketchls/solvers.hpp"

namespace {

using namespace sketchls;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kNumerical = 3;

bool is_usage_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::MissingField:
    case ErrorKind::ParseError:
      return true;
    default:
      return false;
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

struct GenArgs {
  std::size_t m = 2000;
  std::size_t n = 50;
  double kappa = 1e4;
  double rho = 1e-8;
  std::uint64_t seed = 0;
  std::string out;
};

struct SolveArgs {
  std::string problem;
  std::string method = "pne";
  std::string precision = "auto";
  double d_factor = 3.0;
  std::uint64_t seed = 0;
  std::string b_matrix;
  std::string transform = "dct2";
};

struct SweepArgs {
  std::size_t m = 2000;
  std::size_t n = 50;
  double kappa = 1e4;
  double rho_min = 1e-16;
  double rho_max = 1.0;
  std::size_t rho_points = 33;
  std::string methods = "qr,pne,hpne";
  std::string precision = "double";
  double d_factor = 3.0;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::string csv;
};

struct BenchArgs {
  std::size_t m = 4096;
  std::string n_list = "64";
  double kappa = 1e4;
  std::size_t trials = 3;
  std::uint64_t seed = 0;
  std::string csv;
};

int run_gen(const GenArgs& g) {
  const LeastSquaresProblem p = generate_problem(g.m, g.n, g.kappa, g.rho, g.seed);
  io::save_problem(g.out, p);
  std::cout << "wrote " << g.out << '\n';
  return kOk;
}

json report_json(const SolveReport& r) {
  json j;
  j["method"] = std::string(to_string(r.method));
  j["x_hat"] = r.x_hat;
  j["residual_norm"] = r.residual_norm;
  j["relative_residual"] = r.relative_residual;
  j["relative_error"] = optional_json(r.relative_error);
  if (r.preconditioner) {
    const Preconditioner& p = *r.preconditioner;
    j["precision"] = std::string(to_string(p.computed_in));
    j["d"] = p.d;
    j["kappa_rs"] = p.kappa_rs;
    j["kappa_ap"] = optional_json(p.kappa_ap);
  }
  if (r.decision) {
    j["kappa0"] = r.decision->kappa0;
    j["selected_precision"] = std::string(to_string(r.decision->selected));
    j["estimate_overflowed"] = r.decision->overflowed;
  }
  j["bounds"] = r.bounds;
  j["notes"] = r.notes;
  j["wall_ms"] = r.wall_ms;
  return j;
}

int run_solve(const SolveArgs& s) {
  const auto method = parse_method(s.method);
  const auto choice = parse_precision_choice(s.precision);
  const auto transform = parse_transform(s.transform);
  if (!method) fail(ErrorKind::InvalidArgument, "unknown method " + s.method);
  if (!choice) fail(ErrorKind::InvalidArgument, "unknown precision " + s.precision);
  if (!transform) fail(ErrorKind::InvalidArgument, "unknown transform " + s.transform);
  if (*method == Method::NotNormal && s.b_matrix.empty()) {
    fail(ErrorKind::InvalidArgument, "nne requires --b-matrix");
  }
  const LeastSquaresProblem p = io::load_problem(s.problem);
  std::optional<Matrix> b_matrix;
  if (!s.b_matrix.empty()) b_matrix = io::read_matrix_market(std::filesystem::path(s.b_matrix) / "B.mtx");

  try {
    const ConditionDiagnostics diag = condition_diagnostics(p.a);
    SolveReport r;
    std::optional<PreparedPreconditioner> prepared;
    std::optional<Matrix> a_p;
    switch (*method) {
      case Method::Pne:
      case Method::Hpne: {
        PipelineOptions opt;
        opt.method = *method;
        opt.precision = *choice;
        opt.d_factor = s.d_factor;
        opt.transform = *transform;
        opt.seed = s.seed;
        prepared = prepare_preconditioner(p.a, opt);
        a_p = precondition_matrix(p.a, prepared->pre);
        r = solve_prepared(p.a, p.b, *method, *prepared, *a_p);
        break;
      }
      case Method::NotNormal: r = solve_notnormal(p.a, *b_matrix, p.b); break;
      case Method::Normal: r = solve_normal(p.a, p.b); break;
      case Method::Seminormal: r = solve_seminormal(p.a, p.b); break;
      case Method::Qr: r = solve_qr_baseline(p.a, p.b); break;
    }
    attach_reference(r, p.x_star);
    use_two_norm(r, diag.two_norm);
    const Preconditioner* pre = prepared ? &prepared->pre : nullptr;
    const double u1 = bound_unit_roundoff(pre ? pre->computed_in : Precision::Double);
    const double u2 = bound_unit_roundoff(Precision::Double);
    const BoundInputs in =
        measure_bound_inputs(p.a, p.b, r, pre, u1, u2, MeasureCache{&diag, a_p ? &*a_p : nullptr});
    r.bounds = evaluate_bounds(in, *method);
    if (*method == Method::NotNormal) {
      const Matrix bta = multiply_transposed(*b_matrix, p.a);
      const ConditionDiagnostics bd = condition_diagnostics(bta);
      const double nu_b = condition_diagnostics(*b_matrix).two_norm * diag.two_norm / bd.two_norm;
      try {
        r.bounds["nne"] = bound_notnormal(in, bd.two_norm_condition, nu_b);
      } catch (const Error&) {
      }
    }
    std::cout << report_json(r).dump(2) << '\n';
  } catch (const Error& e) {
    if (is_usage_error(e.kind())) throw;
    std::cerr << "numerical failure: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return kNumerical;
  }
  return kOk;
}

int run_sweep_cmd(const SweepArgs& s) {
  SweepConfig cfg;
  cfg.m = s.m;
  cfg.n = s.n;
  cfg.kappa = s.kappa;
  cfg.rho_grid = log_spaced(s.rho_min, s.rho_max, s.rho_points);
  cfg.methods.clear();
  for (const std::string& name : split_list(s.methods)) {
    const auto m = parse_method(name);
    if (!m) fail(ErrorKind::InvalidArgument, "unknown method " + name);
    cfg.methods.push_back(*m);
  }
  const auto choice = parse_precision_choice(s.precision);
  if (!choice) fail(ErrorKind::InvalidArgument, "unknown precision " + s.precision);
  cfg.precision = *choice;
  cfg.d_factor = s.d_factor;
  cfg.trials_per_point = s.trials;
  cfg.seed = s.seed;
  cfg.output_path = s.csv;
  const auto rows = run_sweep(cfg);
  if (s.csv.empty() || s.csv == "-") {
    write_sweep_csv(std::cout, rows);
  } else {
    std::ofstream out(s.csv);
    if (!out) fail(ErrorKind::InvalidArgument, "cannot write " + s.csv);
    write_sweep_csv(out, rows);
  }
  return kOk;
}

int run_bench_cmd(const BenchArgs& b) {
  std::vector<std::size_t> ns;
  for (const std::string& item : split_list(b.n_list)) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || v == 0) fail(ErrorKind::InvalidArgument, "bad n value " + item);
    ns.push_back(static_cast<std::size_t>(v));
  }
  const auto rows = run_benchmark(b.m, ns, b.kappa, b.trials, b.seed);
  if (b.csv.empty() || b.csv == "-") {
    write_benchmark_csv(std::cout, rows);
  } else {
    std::ofstream out(b.csv);
    if (!out) fail(ErrorKind::InvalidArgument, "cannot write " + b.csv);
    write_benchmark_csv(out, rows);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sketch-preconditioned normal-equation least-squares solvers"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a test problem with known solution");
  gen_cmd->add_option("--m", gen.m, "Rows")->required();
  gen_cmd->add_option("--n", gen.n, "Columns")->required();
  gen_cmd->add_option("--kappa", gen.kappa, "Condition number of A")->required();
  gen_cmd->add_option("--rho", gen.rho, "Residual norm")->required();
  gen_cmd->add_option("--seed", gen.seed, "Seed");
  gen_cmd->add_option("--out", gen.out, "Output directory")->required();

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve a stored problem and print a JSON report");
  solve_cmd->add_option("--problem", solve.problem, "Problem directory")->required();
  solve_cmd->add_option("--method", solve.method, "ne|pne|hpne|sne|nne|qr");
  solve_cmd->add_option("--precision", solve.precision, "auto|half|single|double");
  solve_cmd->add_option("--d-factor", solve.d_factor, "Sketch rows per column");
  solve_cmd->add_option("--seed", solve.seed, "Sketch seed");
  solve_cmd->add_option("--b-matrix", solve.b_matrix, "Directory containing B.mtx (nne)");
  solve_cmd->add_option("--transform", solve.transform, "dct2|wht");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Residual sweep, one CSV row per method and trial");
  sweep_cmd->add_option("--m", sweep.m, "Rows");
  sweep_cmd->add_option("--n", sweep.n, "Columns");
  sweep_cmd->add_option("--kappa", sweep.kappa, "Condition number of A");
  sweep_cmd->add_option("--rho-min", sweep.rho_min, "Smallest residual norm");
  sweep_cmd->add_option("--rho-max", sweep.rho_max, "Largest residual norm");
  sweep_cmd->add_option("--rho-points", sweep.rho_points, "Log-spaced residual count");
  sweep_cmd->add_option("--methods", sweep.methods, "Comma-separated methods");
  sweep_cmd->add_option("--precision", sweep.precision, "Preconditioner precision");
  sweep_cmd->add_option("--d-factor", sweep.d_factor, "Sketch rows per column");
  sweep_cmd->add_option("--trials", sweep.trials, "Trials per residual");
  sweep_cmd->add_option("--seed", sweep.seed, "Seed");
  sweep_cmd->add_option("--csv", sweep.csv, "Output CSV path (default stdout)");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Wall-clock medians for qr and pne");
  bench_cmd->add_option("--m", bench.m, "Rows");
  bench_cmd->add_option("--n-list", bench.n_list, "Comma-separated column counts");
  bench_cmd->add_option("--kappa", bench.kappa, "Condition number of A");
  bench_cmd->add_option("--trials", bench.trials, "Timed repetitions");
  bench_cmd->add_option("--seed", bench.seed, "Seed");
  bench_cmd->add_option("--csv", bench.csv, "Output CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*solve_cmd) return run_solve(solve);
    if (*sweep_cmd) return run_sweep_cmd(sweep);
    if (*bench_cmd) return run_bench_cmd(bench);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return is_usage_error(e.kind()) ? kUsage : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kUsage;
}
