#include "sketchls/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>

#include "sketchls/bounds.hpp"
#include "sketchls/dense.hpp"
#include "sketchls/errors.hpp"
#include "sketchls/probgen.hpp"
#include "sketchls/rng.hpp"

namespace sketchls {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::optional<double> lookup(const std::map<std::string, double>& m, const char* key) {
  const auto it = m.find(key);
  if (it == m.end()) return std::nullopt;
  return it->second;
}

bool is_preconditioned(Method m) { return m == Method::Pne || m == Method::Hpne; }

void validate(const SweepConfig& cfg) {
  if (!(cfg.m > cfg.n) || cfg.n == 0) fail(ErrorKind::InvalidArgument, "sweep needs m > n >= 1");
  if (!(cfg.kappa >= 1.0)) fail(ErrorKind::InvalidArgument, "sweep needs kappa >= 1");
  if (cfg.trials_per_point == 0) fail(ErrorKind::InvalidArgument, "trials must be >= 1");
  if (!std::is_sorted(cfg.rho_grid.begin(), cfg.rho_grid.end())) {
    fail(ErrorKind::InvalidArgument, "rho grid must be ascending");
  }
  if (!cfg.rho_grid.empty() && !(cfg.rho_grid.front() >= 0.0)) {
    fail(ErrorKind::InvalidArgument, "rho must be >= 0");
  }
  if (cfg.methods.empty()) fail(ErrorKind::InvalidArgument, "no methods given");
  for (Method m : cfg.methods) {
    if (m == Method::NotNormal) fail(ErrorKind::InvalidArgument, "nne needs an explicit B; not swept");
  }
}

void fill_from_report(SweepRow& row, const SolveReport& r) {
  row.rel_error = r.relative_error;
  row.rel_residual = r.relative_residual;
  row.wall_ms = r.wall_ms;
  if (r.preconditioner) {
    row.precision = std::string(to_string(r.preconditioner->computed_in));
    row.d = r.preconditioner->d;
    row.kappa_rs = r.preconditioner->kappa_rs;
    row.kappa_ap = r.preconditioner->kappa_ap;
  }
  row.bound_pne_old = lookup(r.bounds, "pne_old");
  row.bound_pne_new = lookup(r.bounds, "pne_new");
  row.bound_hpne_old = lookup(r.bounds, "hpne_old");
  row.bound_hpne_new = lookup(r.bounds, "hpne_new");
  row.bound_ne = lookup(r.bounds, "ne");
  row.bound_ls = lookup(r.bounds, "ls");
}

SolveReport solve_plain(Method m, const Matrix& a, std::span<const double> b) {
  switch (m) {
    case Method::Qr: return solve_qr_baseline(a, b);
    case Method::Normal: return solve_normal(a, b);
    case Method::Seminormal: return solve_seminormal(a, b);
    default: break;
  }
  fail(ErrorKind::InvalidArgument, "not a plain method");
}

std::string csv_field(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size() / 2;
  return v.size() % 2 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> cols{
      "method",         "m",         "n",              "kappa",          "rho",
      "precision",      "d",         "kappa_ap",       "kappa_rs",       "rel_error",
      "rel_residual",   "bound_pne_old", "bound_pne_new", "bound_hpne_old", "bound_hpne_new",
      "bound_ne",       "bound_ls",  "seed",           "trial",          "wall_ms",
      "error"};
  return cols;
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  validate(cfg);
  std::vector<SweepRow> rows;
  const bool any_pre = std::any_of(cfg.methods.begin(), cfg.methods.end(), is_preconditioned);

  for (std::size_t ri = 0; ri < cfg.rho_grid.size(); ++ri) {
    const double rho = cfg.rho_grid[ri];
    for (std::size_t trial = 0; trial < cfg.trials_per_point; ++trial) {
      const std::uint64_t sub = rng::derive(cfg.seed, {ri, trial});
      auto blank = [&](Method m) {
        SweepRow row;
        row.method = std::string(to_string(m));
        row.m = cfg.m;
        row.n = cfg.n;
        row.kappa = cfg.kappa;
        row.rho = rho;
        row.seed = sub;
        row.trial = trial;
        return row;
      };

      LeastSquaresProblem problem;
      ConditionDiagnostics diag;
      try {
        problem = generate_problem(cfg.m, cfg.n, cfg.kappa, rho, sub);
        diag = condition_diagnostics(problem.a);
      } catch (const std::exception& e) {
        for (Method m : cfg.methods) {
          SweepRow row = blank(m);
          row.error = e.what();
          rows.push_back(std::move(row));
        }
        continue;
      }

      std::optional<PreparedPreconditioner> prepared;
      std::optional<Matrix> a_p;
      std::string pre_error;
      double pre_ms = 0.0;
      if (any_pre) {
        const auto start = Clock::now();
        try {
          PipelineOptions opt;
          opt.precision = cfg.precision;
          opt.d_factor = cfg.d_factor;
          opt.transform = cfg.transform;
          opt.seed = rng::derive(sub, {0x5ce7c4});
          prepared = prepare_preconditioner(problem.a, opt);
          a_p = precondition_matrix(problem.a, prepared->pre);
        } catch (const std::exception& e) {
          pre_error = e.what();
          prepared.reset();
        }
        pre_ms = elapsed_ms(start);
      }

      for (Method m : cfg.methods) {
        SweepRow row = blank(m);
        try {
          SolveReport r;
          const Preconditioner* pre = nullptr;
          if (is_preconditioned(m)) {
            if (!prepared) fail(ErrorKind::NumericallySingular, pre_error);
            r = solve_prepared(problem.a, problem.b, m, *prepared, *a_p);
            r.wall_ms += pre_ms;
            pre = &prepared->pre;
          } else {
            r = solve_plain(m, problem.a, problem.b);
          }
          attach_reference(r, problem.x_star);
          use_two_norm(r, diag.two_norm);
          const double u1 = bound_unit_roundoff(pre ? pre->computed_in : Precision::Double);
          const double u2 = bound_unit_roundoff(Precision::Double);
          MeasureCache cache{&diag, a_p ? &*a_p : nullptr};
          const BoundInputs in = measure_bound_inputs(problem.a, problem.b, r, pre, u1, u2, cache);
          r.bounds = evaluate_bounds(in, m);
          fill_from_report(row, r);
        } catch (const std::exception& e) {
          row.error = e.what();
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  const auto& cols = sweep_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const SweepRow& r : rows) {
    out << r.method << ',' << r.m << ',' << r.n << ',' << format_number(r.kappa) << ','
        << format_number(r.rho) << ',' << r.precision.value_or("") << ','
        << (r.d ? std::to_string(*r.d) : "") << ',' << csv_field(r.kappa_ap) << ','
        << csv_field(r.kappa_rs) << ',' << csv_field(r.rel_error) << ','
        << csv_field(r.rel_residual) << ',' << csv_field(r.bound_pne_old) << ','
        << csv_field(r.bound_pne_new) << ',' << csv_field(r.bound_hpne_old) << ','
        << csv_field(r.bound_hpne_new) << ',' << csv_field(r.bound_ne) << ','
        << csv_field(r.bound_ls) << ',' << r.seed << ',' << r.trial << ','
        << csv_field(r.wall_ms) << ',' << csv_escape(r.error) << '\n';
  }
}

const std::vector<std::string>& benchmark_columns() {
  static const std::vector<std::string> cols{"method",    "m",           "n",         "kappa", "trials",
                                             "median_ms", "ratio_to_qr", "rel_error", "precision"};
  return cols;
}

std::vector<BenchmarkRow> run_benchmark(std::size_t m, const std::vector<std::size_t>& n_list,
                                        double kappa, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) fail(ErrorKind::InvalidArgument, "trials must be >= 1");
  std::vector<BenchmarkRow> rows;
  for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
    const std::size_t n = n_list[ni];
    const LeastSquaresProblem p = generate_problem(m, n, kappa, 1e-8, rng::derive(seed, {ni}));

    struct Variant {
      const char* name;
      std::optional<PrecisionChoice> precision;
    };
    const Variant variants[] = {{"qr", std::nullopt},
                                {"pne_double", PrecisionChoice::Double},
                                {"pne_auto", PrecisionChoice::Auto}};
    double qr_ms = 0.0;
    for (const Variant& v : variants) {
      std::vector<double> times;
      BenchmarkRow row;
      row.method = v.name;
      row.m = m;
      row.n = n;
      row.kappa = kappa;
      row.trials = trials;
      for (std::size_t t = 0; t < trials; ++t) {
        const auto start = Clock::now();
        SolveReport r;
        if (v.precision) {
          PipelineOptions opt;
          opt.method = Method::Pne;
          opt.precision = *v.precision;
          opt.seed = rng::derive(seed, {ni, 1});
          r = algorithm1_pipeline(p.a, p.b, opt);
        } else {
          r = solve_qr_baseline(p.a, p.b);
        }
        times.push_back(std::max(elapsed_ms(start), 1e-6));
        if (t == 0) {
          attach_reference(r, p.x_star);
          row.rel_error = r.relative_error.value_or(0.0);
          if (r.preconditioner) row.precision = std::string(to_string(r.preconditioner->computed_in));
        }
      }
      row.median_ms = median(times);
      if (!v.precision) qr_ms = row.median_ms;
      row.ratio_to_qr = row.median_ms / qr_ms;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_benchmark_csv(std::ostream& out, const std::vector<BenchmarkRow>& rows) {
  const auto& cols = benchmark_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const BenchmarkRow& r : rows) {
    out << r.method << ',' << r.m << ',' << r.n << ',' << format_number(r.kappa) << ',' << r.trials
        << ',' << format_number(r.median_ms) << ',' << format_number(r.ratio_to_qr) << ','
        << format_number(r.rel_error) << ',' << r.precision << '\n';
  }
}

}  // namespace sketchls
