#include "sketchls/solvers.hpp"

#include <chrono>
#include <cmath>

#include "sketchls/dense.hpp"
#include "sketchls/errors.hpp"

namespace sketchls {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void check_system(const Matrix& a, std::span<const double> b) {
  if (a.rows() < a.cols() || a.cols() == 0) {
    fail(ErrorKind::InvalidArgument, "least-squares matrix must have rows >= cols >= 1");
  }
  if (b.size() != a.rows()) fail(ErrorKind::DimensionMismatch, "rhs length differs from rows");
}

SolveReport finish(Method method, const Matrix& a, std::span<const double> b, Vector x,
                   Clock::time_point start) {
  SolveReport r;
  r.method = method;
  r.x_hat = std::move(x);
  const Vector residual = subtract(matvec(a, r.x_hat), b);
  r.residual_norm = norm2(residual);
  r.relative_residual = r.residual_norm / (frobenius_norm(a) * norm2(r.x_hat));
  r.residual_norm_is_frobenius = true;
  r.wall_ms = elapsed_ms(start);
  return r;
}

Precision next_precision(Precision p) {
  return p == Precision::Half ? Precision::Single : Precision::Double;
}

}  // namespace

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::Normal: return "ne";
    case Method::Pne: return "pne";
    case Method::Hpne: return "hpne";
    case Method::Seminormal: return "sne";
    case Method::NotNormal: return "nne";
    case Method::Qr: return "qr";
  }
  return "qr";
}

std::optional<Method> parse_method(std::string_view name) noexcept {
  for (Method m : {Method::Normal, Method::Pne, Method::Hpne, Method::Seminormal, Method::NotNormal,
                   Method::Qr}) {
    if (name == to_string(m)) return m;
  }
  return std::nullopt;
}

void attach_reference(SolveReport& report, std::span<const double> x_star) {
  report.relative_error = norm2(subtract(report.x_hat, x_star)) / norm2(report.x_hat);
}

void use_two_norm(SolveReport& report, double a_two_norm) {
  report.relative_residual = report.residual_norm / (a_two_norm * norm2(report.x_hat));
  report.residual_norm_is_frobenius = false;
}

SolveReport solve_qr_baseline(const Matrix& a, std::span<const double> b) {
  check_system(a, b);
  const auto start = Clock::now();
  const QRFactors qr = householder_qr(a);
  Vector x = triangular_solve(qr.r, matvec_transposed(qr.q, b));
  return finish(Method::Qr, a, b, std::move(x), start);
}

SolveReport solve_normal(const Matrix& a, std::span<const double> b) {
  check_system(a, b);
  const auto start = Clock::now();
  Vector x = cholesky_solve(gram(a), matvec_transposed(a, b));
  return finish(Method::Normal, a, b, std::move(x), start);
}

SolveReport solve_seminormal(const Matrix& a, std::span<const double> b) {
  check_system(a, b);
  const auto start = Clock::now();
  const Matrix r = householder_r(a);
  Vector x = triangular_solve(r, matvec_transposed(a, b), true);
  x = triangular_solve(r, x, false);
  return finish(Method::Seminormal, a, b, std::move(x), start);
}

SolveReport solve_notnormal(const Matrix& a, const Matrix& b_matrix, std::span<const double> rhs) {
  check_system(a, rhs);
  if (b_matrix.rows() != a.rows() || b_matrix.cols() != a.cols()) {
    fail(ErrorKind::DimensionMismatch, "B must have the same shape as A");
  }
  const auto start = Clock::now();
  Vector x = lu_solve(multiply_transposed(b_matrix, a), matvec_transposed(b_matrix, rhs));
  return finish(Method::NotNormal, a, rhs, std::move(x), start);
}

Preconditioner build_preconditioner(const Matrix& a, double d_factor, Transform transform,
                                    Precision p, std::uint64_t seed) {
  const std::size_t n = a.cols();
  if (a.rows() < n || n == 0) fail(ErrorKind::InvalidArgument, "preconditioner needs rows >= cols");
  if (!(d_factor > 0.0)) fail(ErrorKind::InvalidArgument, "d_factor must be positive");
  const auto d = static_cast<std::size_t>(std::ceil(d_factor * static_cast<double>(n)));
  if (d < n) fail(ErrorKind::InvalidArgument, "sketch must have at least n rows");
  const SketchOperator op = make_sketch(a.rows(), d, transform, seed);
  if (d > op.padded_rows) fail(ErrorKind::InvalidArgument, "sketch rows exceed (padded) m");

  // Power-of-two normalization: exact, keeps binary16 in range and makes the
  // result invariant under power-of-two scaling of A.
  int e = 0;
  const double amax = max_abs(a);
  if (amax > 0.0 && std::isfinite(amax)) std::frexp(amax, &e);
  const RoundedMatrix demoted = round_to_precision(scaled(a, std::ldexp(1.0, -e)), p);
  if (demoted.overflowed) fail(ErrorKind::Overflow, "A does not fit the preconditioner precision");

  const Matrix sketched = apply_sketch(op, demoted.matrix, p);
  for (double v : sketched.data()) {
    if (!std::isfinite(v)) fail(ErrorKind::Overflow, "sketch overflowed");
  }
  Matrix r = qr_r_in_precision(sketched, p);
  for (double& v : r.data()) v = std::ldexp(v, e);
  r.set_storage(Precision::Double);

  Preconditioner pre;
  pre.kappa_rs = condition_diagnostics(r).two_norm_condition;
  pre.r_s = std::move(r);
  pre.computed_in = p;
  pre.d = d;
  pre.seed = seed;
  return pre;
}

Matrix precondition_matrix(const Matrix& a, Preconditioner& pre) {
  Matrix a_p = solve_right_upper(a, pre.r_s);
  pre.kappa_ap = condition_diagnostics(a_p).two_norm_condition;
  return a_p;
}

SolveReport solve_pne(const Matrix& a, std::span<const double> b, const Preconditioner& pre,
                      const Matrix& a_p) {
  check_system(a, b);
  const auto start = Clock::now();
  const Matrix g = gram(a_p);
  const Vector c = matvec_transposed(a_p, b);
  Vector y;
  std::vector<std::string> notes;
  try {
    y = cholesky_solve(g, c);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotPositiveDefinite) throw;
    notes.emplace_back("cholesky breakdown on A_p^T A_p; solved by LU");
    y = lu_solve(g, c);
  }
  Vector x = triangular_solve(pre.r_s, y);
  SolveReport r = finish(Method::Pne, a, b, std::move(x), start);
  r.y_hat = std::move(y);
  r.preconditioner = pre;
  r.notes = std::move(notes);
  return r;
}

SolveReport solve_pne(const Matrix& a, std::span<const double> b, const Preconditioner& pre) {
  const auto start = Clock::now();
  SolveReport r = solve_pne(a, b, pre, solve_right_upper(a, pre.r_s));
  r.wall_ms = elapsed_ms(start);
  return r;
}

SolveReport solve_hpne(const Matrix& a, std::span<const double> b, const Preconditioner& pre,
                       const Matrix& a_p) {
  check_system(a, b);
  const auto start = Clock::now();
  Vector x = lu_solve(multiply_transposed(a_p, a), matvec_transposed(a_p, b));
  SolveReport r = finish(Method::Hpne, a, b, std::move(x), start);
  r.preconditioner = pre;
  return r;
}

SolveReport solve_hpne(const Matrix& a, std::span<const double> b, const Preconditioner& pre) {
  const auto start = Clock::now();
  SolveReport r = solve_hpne(a, b, pre, solve_right_upper(a, pre.r_s));
  r.wall_ms = elapsed_ms(start);
  return r;
}

PreparedPreconditioner prepare_preconditioner(const Matrix& a, const PipelineOptions& options) {
  PreparedPreconditioner out;
  Precision p = Precision::Double;
  switch (options.precision) {
    case PrecisionChoice::Auto:
      out.decision = decide_precision(a);
      p = out.decision->selected;
      break;
    case PrecisionChoice::Half: p = Precision::Half; break;
    case PrecisionChoice::Single: p = Precision::Single; break;
    case PrecisionChoice::Double: p = Precision::Double; break;
  }
  try {
    out.pre = build_preconditioner(a, options.d_factor, options.transform, p, options.seed);
  } catch (const Error& e) {
    const bool retryable = e.kind() == ErrorKind::RankDeficient || e.kind() == ErrorKind::Overflow;
    if (!retryable || p == Precision::Double) throw;
    out.escalated_from = p;
    p = next_precision(p);
    out.pre = build_preconditioner(a, options.d_factor, options.transform, p, options.seed);
  }
  return out;
}

SolveReport solve_prepared(const Matrix& a, std::span<const double> b, Method method,
                           const PreparedPreconditioner& prepared, const Matrix& a_p) {
  if (method != Method::Pne && method != Method::Hpne) {
    fail(ErrorKind::InvalidArgument, "preconditioned method must be pne or hpne");
  }
  SolveReport r = method == Method::Pne ? solve_pne(a, b, prepared.pre, a_p)
                                        : solve_hpne(a, b, prepared.pre, a_p);
  r.decision = prepared.decision;
  r.escalated_from = prepared.escalated_from;
  if (prepared.escalated_from) {
    r.notes.push_back("preconditioner escalated from " +
                      std::string(to_string(*prepared.escalated_from)) + " to " +
                      std::string(to_string(prepared.pre.computed_in)));
  }
  return r;
}

SolveReport algorithm1_pipeline(const Matrix& a, std::span<const double> b,
                                const PipelineOptions& options) {
  if (options.method != Method::Pne && options.method != Method::Hpne) {
    fail(ErrorKind::InvalidArgument, "pipeline method must be pne or hpne");
  }
  check_system(a, b);
  const auto start = Clock::now();
  PreparedPreconditioner prepared = prepare_preconditioner(a, options);
  const Matrix a_p = precondition_matrix(a, prepared.pre);
  SolveReport r = solve_prepared(a, b, options.method, prepared, a_p);
  r.wall_ms = elapsed_ms(start);
  return r;
}

}  // namespace sketchls
