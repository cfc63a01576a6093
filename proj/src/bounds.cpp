#include "sketchls/bounds.hpp"

#include <cmath>

#include "sketchls/errors.hpp"

namespace sketchls {

namespace {

double need(const std::optional<double>& v, const char* name) {
  if (!v) fail(ErrorKind::MissingField, std::string("bound input ") + name + " is not set");
  return *v;
}

}  // namespace

double eta1(double kappa_rs, double u1) {
  const double x = kappa_rs * u1;
  if (std::fabs(1.0 - x) <= 1e-15 * std::max(1.0, std::fabs(x))) {
    fail(ErrorKind::PoleAtOne, "kappa(R_s)*u1 equals 1");
  }
  return std::fabs(x / (1.0 - x));
}

double bound_ls(const BoundInputs& in) {
  const double kappa = need(in.kappa_a, "kappa_a");
  const double eps = need(in.eps_a, "eps_a");
  const double res = need(in.res_ratio_a, "res_ratio_a");
  return kappa * eps * (1.0 + kappa * res);
}

double bound_ne_family(const BoundInputs& in, NormalKind) {
  const double kappa = need(in.kappa_a, "kappa_a");
  const double eps = need(in.eps_a, "eps_a");
  const double res = need(in.res_ratio_a, "res_ratio_a");
  return kappa * kappa * eps * (res + 1.0 + eps);
}

double bound_pne(const BoundInputs& in, BoundVariant variant) {
  const double k_rs = need(in.kappa_rs, "kappa_rs");
  const double k_ap = need(in.kappa_ap, "kappa_ap");
  const double u2 = need(in.u2, "u2");
  if (variant == BoundVariant::Old) {
    const double nu = need(in.nu_pne, "nu_pne");
    const double res_p = need(in.res_ratio_ap, "res_ratio_ap");
    const double eta = eta1(k_rs, need(in.u1, "u1"));
    return k_rs * k_ap * nu * (u2 + k_ap * eta * (res_p + u2));
  }
  const double k_a = need(in.kappa_a, "kappa_a");
  const double res = need(in.res_ratio_a, "res_ratio_a");
  return k_rs * k_ap * u2 * (k_ap * k_rs * res + 1.0 + k_a * u2);
}

double bound_hpne(const BoundInputs& in, BoundVariant variant) {
  const double k_apta = need(in.kappa_apta, "kappa_apta");
  const double nu = need(in.nu_hpne, "nu_hpne");
  const double u2 = need(in.u2, "u2");
  const double res = need(in.res_ratio_a, "res_ratio_a");
  if (variant == BoundVariant::Old) {
    const double eta = eta1(need(in.kappa_rs, "kappa_rs"), need(in.u1, "u1"));
    return k_apta * nu * (eta * res + (1.0 + eta) * u2);
  }
  const double k_rs = need(in.kappa_rs, "kappa_rs");
  const double k_a = need(in.kappa_a, "kappa_a");
  return k_apta * nu * u2 * (k_rs * res + 1.0 + k_a * u2);
}

double bound_notnormal(const BoundInputs& in, double kappa_bta, double nu_b) {
  const double eps_a = need(in.eps_a, "eps_a");
  const double eps_b = need(in.eps_b, "eps_b");
  const double res = need(in.res_ratio_a, "res_ratio_a");
  return kappa_bta * nu_b * (eps_b * res + (1.0 + eps_b) * eps_a);
}

BoundInputs measure_bound_inputs(const Matrix& a, std::span<const double> b,
                                 const SolveReport& report, const Preconditioner* pre, double u1,
                                 double u2, const MeasureCache& cache) {
  BoundInputs in;
  in.u1 = u1;
  in.u2 = u2;
  in.eps_a = u2;
  in.eps_s = u1;
  in.eps_p = u2;
  in.eps_b = u2;

  ConditionDiagnostics local;
  const ConditionDiagnostics* diag = cache.a_diagnostics;
  if (diag == nullptr) {
    local = condition_diagnostics(a);
    diag = &local;
  }
  const double a_norm = diag->two_norm;
  in.kappa_a = diag->two_norm_condition;
  in.res_ratio_a = report.residual_norm / (a_norm * norm2(report.x_hat));

  if (pre == nullptr) return in;

  Matrix local_ap;
  const Matrix* a_p = cache.a_p;
  if (a_p == nullptr) {
    local_ap = solve_right_upper(a, pre->r_s);
    a_p = &local_ap;
  }
  const ConditionDiagnostics rs_diag = condition_diagnostics(pre->r_s);
  const ConditionDiagnostics ap_diag = condition_diagnostics(*a_p);
  const ConditionDiagnostics apta_diag = condition_diagnostics(multiply_transposed(*a_p, a));
  in.kappa_rs = rs_diag.two_norm_condition;
  in.kappa_ap = ap_diag.two_norm_condition;
  in.kappa_apta = apta_diag.two_norm_condition;
  in.nu_hpne = ap_diag.two_norm * a_norm / apta_diag.two_norm;
  in.nu_pne = norm2(matvec(pre->r_s, report.x_hat)) / (rs_diag.two_norm * norm2(report.x_hat));
  if (report.y_hat) {
    const Vector r_p = subtract(matvec(*a_p, *report.y_hat), b);
    in.res_ratio_ap = norm2(r_p) / (ap_diag.two_norm * norm2(*report.y_hat));
  }
  return in;
}

std::map<std::string, double> evaluate_bounds(const BoundInputs& in, Method method) {
  std::map<std::string, double> out;
  const auto put = [&](const char* name, auto&& evaluate) {
    try {
      out[name] = evaluate();
    } catch (const Error&) {
      // Pole or missing input: the bound is not reported.
    }
  };
  put("ls", [&] { return bound_ls(in); });
  put("ne", [&] { return bound_ne_family(in, NormalKind::Normal); });
  switch (method) {
    case Method::Seminormal:
      put("sne", [&] { return bound_ne_family(in, NormalKind::Seminormal); });
      break;
    case Method::Pne:
      put("pne_old", [&] { return bound_pne(in, BoundVariant::Old); });
      put("pne_new", [&] { return bound_pne(in, BoundVariant::New); });
      break;
    case Method::Hpne:
      put("hpne_old", [&] { return bound_hpne(in, BoundVariant::Old); });
      put("hpne_new", [&] { return bound_hpne(in, BoundVariant::New); });
      break;
    default: break;
  }
  return out;
}

}  // namespace sketchls
