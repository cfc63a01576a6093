// Acceptance suite: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "sketchls/dense.hpp"
#include "sketchls/errors.hpp"
#include "sketchls/harness.hpp"
#include "sketchls/probgen.hpp"
#include "sketchls/rng.hpp"
#include "sketchls/solvers.hpp"

using namespace sketchls;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double rel_diff(std::span<const double> a, std::span<const double> b) {
  return norm2(subtract(a, b)) / norm2(b);
}

double rel_error(std::span<const double> x_hat, std::span<const double> x_star) {
  return norm2(subtract(x_hat, x_star)) / norm2(x_hat);
}

Matrix gaussian(std::size_t m, std::size_t n, std::uint64_t seed) {
  rng::CounterStream s(seed);
  Matrix a(m, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) a(i, j) = s.normal();
  return a;
}

// Criterion 1.
Outcome generator_fidelity() {
  const std::size_t ms[] = {256, 2000};
  const std::size_t ns[] = {16, 50};
  const double kappas[] = {1.0, 1e2, 1e4, 1e8};
  const double rhos[] = {0.0, 1e-8, 1e-2, 1.0};
  int ok_x = 0, ok_res = 0, ok_orth = 0, ok_kappa = 0;
  std::map<double, double> worst_res, worst_orth;
  const int total = 50;
  for (int i = 0; i < total; ++i) {
    const std::size_t m = ms[i % 2];
    const std::size_t n = ns[(i / 2) % 2];
    const double kappa = kappas[(i / 4) % 4];
    const double rho = rhos[(i / 16) % 4];
    const LeastSquaresProblem p = generate_problem(m, n, kappa, rho, 1000 + i);
    const Vector r = subtract(p.b, matvec(p.a, p.x_star));
    const double rn = norm2(r);
    const double orth = norm2(matvec_transposed(p.a, r));
    const double res_err = rho == 0.0 ? rn : std::abs(rn - rho) / rho;
    const double orth_ratio = rho == 0.0 ? (orth == 0.0 ? 0.0 : INFINITY) : orth / rho;
    worst_res[rho] = std::max(worst_res[rho], res_err);
    worst_orth[rho] = std::max(worst_orth[rho], orth_ratio);
    ok_x += std::abs(norm2(p.x_star) - 1.0) <= 1e-14;
    ok_res += rho == 0.0 ? rn == 0.0 : res_err <= 1e-12;
    ok_orth += rho == 0.0 ? orth == 0.0 : orth <= 1e-12 * rho;
    ok_kappa += std::abs(condition_diagnostics(p.a).two_norm_condition / kappa - 1.0) <= 0.01;
  }
  std::string per_rho;
  for (const auto& [rho, v] : worst_res) {
    per_rho += fmt(" [rho=%g: res rel err %.2e, |A^T r|/rho %.2e]", rho, v, worst_orth[rho]);
  }
  return {ok_x == total && ok_res == total && ok_orth == total && ok_kappa == total,
          fmt("|x*|=1: %d/%d, residual norm: %d/%d, orthogonality: %d/%d, kappa: %d/%d;", ok_x,
              total, ok_res, total, ok_orth, total, ok_kappa, total) +
              per_rho};
}

// Criterion 2.
Outcome preconditioner_quality() {
  bool pass = true;
  std::string detail;
  for (double kappa : {1e2, 1e4, 1e6, 1e8}) {
    int good = 0;
    double worst = 0.0;
    for (int s = 0; s < 100; ++s) {
      const std::uint64_t seed = rng::derive(2, {static_cast<std::uint64_t>(std::log10(kappa)),
                                                 static_cast<std::uint64_t>(s)});
      const LeastSquaresProblem p = generate_problem(4096, 64, kappa, 1e-6, seed);
      Preconditioner pre = build_preconditioner(p.a, 3.0, Transform::Dct2, Precision::Double, seed);
      precondition_matrix(p.a, pre);
      good += *pre.kappa_ap <= 10.0;
      worst = std::max(worst, *pre.kappa_ap);
    }
    pass = pass && good >= 95;
    detail += fmt("kappa=%g: %d/100 (max %.2f); ", kappa, good, worst);
  }
  return {pass, detail};
}

// Criterion 3.
Outcome perturbed_envelope() {
  const double levels[] = {0.01, 0.1, 0.5};
  const double kappas[] = {1e2, 1e4, 1e6};
  int ok = 0;
  double tightest = INFINITY;
  const int total = 50;
  for (int i = 0; i < total; ++i) {
    const LeastSquaresProblem p = generate_problem(500, 20, kappas[i % 3], 1e-6, 3000 + i);
    Preconditioner pre = build_preconditioner(p.a, 3.0, Transform::Dct2, Precision::Double, i);
    precondition_matrix(p.a, pre);
    const ConditionDiagnostics rd = condition_diagnostics(pre.r_s);
    const double target = levels[i % 3];
    const double eps = target / rd.two_norm_condition;
    Matrix e = gaussian(20, 20, 4000 + i);
    const double en = condition_diagnostics(e).two_norm;
    e = scaled(e, eps * rd.two_norm / en);
    Matrix perturbed = pre.r_s;
    for (std::size_t j = 0; j < 20; ++j)
      for (std::size_t k = 0; k < 20; ++k) perturbed(k, j) += e(k, j);
    // A(R_s + E)⁻¹ through an LU of the transposed system, row by row.
    const Matrix pt = transpose(perturbed);
    Matrix a1(p.a.rows(), 20);
    for (std::size_t row = 0; row < p.a.rows(); ++row) {
      Vector arow(20);
      for (std::size_t k = 0; k < 20; ++k) arow[k] = p.a(row, k);
      const Vector x = lu_solve(pt, arow);
      for (std::size_t k = 0; k < 20; ++k) a1(row, k) = x[k];
    }
    const double measured = condition_diagnostics(a1).two_norm_condition;
    const double eps_actual = condition_diagnostics(e).two_norm / rd.two_norm;
    const double ek = eps_actual * rd.two_norm_condition;
    const double bound = *pre.kappa_ap * (1.0 + ek) / (1.0 - ek);
    ok += measured <= bound * (1.0 + 1e-8);
    tightest = std::min(tightest, bound / measured);
  }
  return {ok == total, fmt("%d/%d within the envelope (smallest bound/measured %.4f)", ok, total,
                           tightest)};
}

struct SweepData {
  std::vector<SweepRow> rows;
  double seconds = 0.0;
};

SweepData sweep(double kappa, PrecisionChoice precision, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  SweepConfig cfg;
  cfg.m = 2000;
  cfg.n = 50;
  cfg.kappa = kappa;
  cfg.rho_grid = log_spaced(1e-16, 1.0, 33);
  cfg.methods = {Method::Qr, Method::Pne, Method::Hpne};
  cfg.precision = precision;
  cfg.trials_per_point = 3;
  cfg.seed = seed;
  SweepData d;
  d.rows = run_sweep(cfg);
  d.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return d;
}

// Rows grouped by (rho, trial): method -> row.
std::map<std::pair<double, std::size_t>, std::map<std::string, const SweepRow*>> by_point(
    const SweepData& d) {
  std::map<std::pair<double, std::size_t>, std::map<std::string, const SweepRow*>> out;
  for (const SweepRow& r : d.rows) out[{r.rho, r.trial}][r.method] = &r;
  return out;
}

Outcome bound_domination(const SweepData& dbl, const SweepData& mixed) {
  bool pass = true;
  std::string detail;
  for (const auto& [name, data] : {std::pair{"kappa=1e4/double", &dbl}, std::pair{"kappa=1e8/single", &mixed}}) {
    for (const char* method : {"pne", "hpne"}) {
      int total = 0, ok = 0, errors = 0;
      for (const SweepRow& r : data->rows) {
        if (r.method != method) continue;
        ++total;
        if (!r.error.empty()) {
          ++errors;
          continue;
        }
        const auto& bound = std::string(method) == "pne" ? r.bound_pne_new : r.bound_hpne_new;
        ok += bound && r.rel_error && *r.rel_error <= *bound;
      }
      pass = pass && ok >= 0.99 * total;
      detail += fmt("%s %s: %d/%d%s; ", name, method, ok, total,
                    errors ? fmt(" (%d errors)", errors).c_str() : "");
    }
  }
  return {pass, detail + fmt("sweeps took %.1fs + %.1fs", dbl.seconds, mixed.seconds)};
}

Outcome old_bound_blowup(const SweepData& mixed) {
  int total = 0, ok = 0;
  double smallest = INFINITY;
  for (const SweepRow& r : mixed.rows) {
    if (r.rho < 1e-8 * (1 - 1e-12) || (r.method != "pne" && r.method != "hpne")) continue;
    ++total;
    const auto& o = r.method == "pne" ? r.bound_pne_old : r.bound_hpne_old;
    const auto& n = r.method == "pne" ? r.bound_pne_new : r.bound_hpne_new;
    if (!o || !n) continue;
    smallest = std::min(smallest, *o / *n);
    ok += *o >= 10.0 * *n;
  }
  return {total > 0 && ok == total,
          fmt("%d/%d rows with rho >= 1e-8 have old >= 10*new (smallest ratio %.3g)", ok, total,
              smallest)};
}

Outcome double_parity(const SweepData& dbl) {
  int total = 0, ok = 0;
  double worst = 0.0;
  for (const auto& [key, methods] : by_point(dbl)) {
    if (key.first < 1e-4 * (1 - 1e-12)) continue;
    const SweepRow* qr = methods.at("qr");
    for (const char* m : {"pne", "hpne"}) {
      const SweepRow* r = methods.at(m);
      ++total;
      if (!r->rel_error || !qr->rel_error) continue;
      const double ratio = *r->rel_error / *qr->rel_error;
      worst = std::max(worst, ratio);
      ok += ratio <= 10.0;
    }
  }
  return {total > 0 && ok == total,
          fmt("%d/%d rows with rho >= 1e-4 within 10x of QR (worst ratio %.2f)", ok, total, worst)};
}

Outcome mixed_envelope(const SweepData& mixed) {
  int small_total = 0, small_ok = 0, large_total = 0, large_ok = 0;
  double worst_small = 0.0, worst_large = 0.0;
  for (const auto& [key, methods] : by_point(mixed)) {
    const double rho = key.first;
    const bool small = rho < 1e-6;
    const bool large = rho >= 1e-4 * (1 - 1e-12);
    if (!small && !large) continue;
    const SweepRow* qr = methods.at("qr");
    for (const char* m : {"pne", "hpne"}) {
      const SweepRow* r = methods.at(m);
      const double ratio =
          r->rel_error && qr->rel_error ? *r->rel_error / *qr->rel_error : INFINITY;
      if (small) {
        ++small_total;
        small_ok += ratio <= 1000.0;
        worst_small = std::max(worst_small, ratio);
      } else {
        ++large_total;
        large_ok += ratio <= 10.0;
        worst_large = std::max(worst_large, ratio);
      }
    }
  }
  return {small_ok >= 0.9 * small_total && large_ok >= 0.9 * large_total,
          fmt("rho < 1e-6: %d/%d within 1000x (worst %.3g); rho >= 1e-4: %d/%d within 10x (worst "
              "%.3g)",
              small_ok, small_total, worst_small, large_ok, large_total, worst_large)};
}

// Criterion 8.
Outcome automatic_selection() {
  struct Case {
    double kappa;
    Precision expected;
    std::optional<double> factor;
  };
  const Case cases[] = {{1e2, Precision::Half, 100.0},
                        {1e6, Precision::Single, std::nullopt},
                        {1e10, Precision::Double, 10.0}};
  const auto rhos = log_spaced(1e-12, 1e-2, 10);
  bool pass = true;
  std::string detail;
  for (const Case& c : cases) {
    int selected = 0, accurate = 0;
    double worst = 0.0;
    for (int s = 0; s < 10; ++s) {
      const LeastSquaresProblem p = generate_problem(2000, 50, c.kappa, rhos[s], 8000 + s);
      PipelineOptions opt;
      opt.method = Method::Pne;
      opt.precision = PrecisionChoice::Auto;
      opt.seed = 80 + s;
      const SolveReport r = algorithm1_pipeline(p.a, p.b, opt);
      selected += r.decision && r.decision->selected == c.expected;
      const double qr = rel_error(solve_qr_baseline(p.a, p.b).x_hat, p.x_star);
      const double ratio = rel_error(r.x_hat, p.x_star) / qr;
      worst = std::max(worst, ratio);
      accurate += !c.factor || ratio <= *c.factor;
    }
    pass = pass && selected == 10 && accurate >= 9;
    detail += fmt("kappa=%g: %s selected %d/10", c.kappa, std::string(to_string(c.expected)).c_str(),
                  selected);
    if (c.factor) detail += fmt(", within %gx of QR %d/10 (worst %.3g)", *c.factor, accurate, worst);
    detail += "; ";
  }
  return {pass, detail};
}

// Criterion 9.
Outcome seminormal_matches_normal() {
  int ok = 0;
  double worst = 0.0;
  const double kappas[] = {1e1, 1e2, 1e3, 1e4};
  for (int i = 0; i < 20; ++i) {
    const LeastSquaresProblem p = generate_problem(2000, 50, kappas[i % 4], 1e-3, 9000 + i);
    const Vector ne = solve_normal(p.a, p.b).x_hat;
    const double d = rel_diff(solve_seminormal(p.a, p.b).x_hat, ne);
    worst = std::max(worst, d);
    ok += d <= 1e-8;
  }
  return {ok == 20, fmt("%d/20 within 1e-8 over kappa in {1e1,1e2,1e3,1e4} (worst %.3g)", ok, worst)};
}

// Criterion 10.
Outcome notnormal_reductions() {
  int ok_hpne = 0, ok_ne = 0;
  double worst_hpne = 0.0, worst_ne = 0.0;
  for (int s = 0; s < 20; ++s) {
    const LeastSquaresProblem p = generate_problem(2000, 50, 1e4, 1e-3, 10000 + s);
    Preconditioner pre = build_preconditioner(p.a, 3.0, Transform::Dct2, Precision::Double, s);
    const Matrix a_p = precondition_matrix(p.a, pre);
    const double dh = rel_diff(solve_notnormal(p.a, a_p, p.b).x_hat, solve_hpne(p.a, p.b, pre, a_p).x_hat);
    worst_hpne = std::max(worst_hpne, dh);
    ok_hpne += dh <= 1e-12;

    const LeastSquaresProblem w = generate_problem(2000, 50, 10.0, 1e-3, 11000 + s);
    const double dn = rel_diff(solve_notnormal(w.a, w.a, w.b).x_hat, solve_normal(w.a, w.b).x_hat);
    worst_ne = std::max(worst_ne, dn);
    ok_ne += dn <= 1e-12;
  }
  return {ok_hpne == 20 && ok_ne == 20,
          fmt("B=A_p vs HPNE (kappa=1e4): %d/20 (worst %.3g); B=A vs NE (kappa=10): %d/20 (worst "
              "%.3g)",
              ok_hpne, worst_hpne, ok_ne, worst_ne)};
}

// Criterion 11.
Outcome benchmark_schema() {
  const auto rows = run_benchmark(4096, {32, 64}, 1e4, 3, 11);
  bool ok = rows.size() == 6;
  for (const BenchmarkRow& r : rows) {
    ok = ok && r.median_ms > 0.0 && r.ratio_to_qr > 0.0 && std::isfinite(r.ratio_to_qr) &&
         r.rel_error > 0.0;
  }
  std::string detail = fmt("%zu rows, all timings and ratios positive: %s; ratios reported, not asserted:",
                           rows.size(), ok ? "yes" : "no");
  for (const BenchmarkRow& r : rows) detail += fmt(" %s/n=%zu %.2f", r.method.c_str(), r.n, r.ratio_to_qr);
  return {ok, detail};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* name, const std::function<Outcome()>& f) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::printf("%s criterion %d (%s) [%.1fs]: %s\n", o.pass ? "PASS" : "FAIL", id, name, secs,
                o.detail.c_str());
    std::fflush(stdout);
  };

  report(1, "generator fidelity", generator_fidelity);
  report(2, "preconditioner quality", preconditioner_quality);
  report(3, "perturbed preconditioner envelope", perturbed_envelope);

  SweepData dbl, mixed;
  report(4, "bound domination", [&] {
    dbl = sweep(1e4, PrecisionChoice::Double, 4);
    mixed = sweep(1e8, PrecisionChoice::Single, 5);
    return bound_domination(dbl, mixed);
  });
  report(5, "old bounds blow up in mixed precision", [&] { return old_bound_blowup(mixed); });
  report(6, "double precision accuracy parity", [&] { return double_parity(dbl); });
  report(7, "mixed precision accuracy envelope", [&] { return mixed_envelope(mixed); });
  report(8, "automatic precision selection", automatic_selection);
  report(9, "seminormal matches normal equations", seminormal_matches_normal);
  report(10, "not-normal reductions", notnormal_reductions);
  report(11, "benchmark schema only, no speedup claims", benchmark_schema);

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
