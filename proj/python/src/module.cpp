#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "sketchls/bounds.hpp"
#include "sketchls/dense.hpp"
#include "sketchls/errors.hpp"
#include "sketchls/harness.hpp"
#include "sketchls/precision.hpp"
#include "sketchls/probgen.hpp"
#include "sketchls/scalar.hpp"
#include "sketchls/sketch.hpp"
#include "sketchls/solvers.hpp"

namespace py = pybind11;
using namespace sketchls;

namespace {

using FArray = py::array_t<double, py::array::f_style | py::array::forcecast>;
using CArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

Matrix to_matrix(const FArray& a) {
  if (a.ndim() != 2) throw py::value_error("expected a 2-D array");
  const auto m = static_cast<std::size_t>(a.shape(0));
  const auto n = static_cast<std::size_t>(a.shape(1));
  return Matrix(m, n, std::vector<double>(a.data(), a.data() + m * n));
}

Vector to_vector(const CArray& v) {
  if (v.ndim() != 1) throw py::value_error("expected a 1-D array");
  return Vector(v.data(), v.data() + v.shape(0));
}

py::array_t<double> from_matrix(const Matrix& a) {
  py::array_t<double, py::array::f_style> out({a.rows(), a.cols()});
  std::copy(a.values().begin(), a.values().end(), out.mutable_data());
  return out;
}

py::array_t<double> from_vector(const Vector& v) {
  py::array_t<double> out(v.size());
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

Precision precision_arg(const std::string& name) {
  const auto p = parse_precision(name);
  if (!p) throw py::value_error("unknown precision: " + name);
  return *p;
}

Transform transform_arg(const std::string& name) {
  const auto t = parse_transform(name);
  if (!t) throw py::value_error("unknown transform: " + name);
  return *t;
}

Method method_arg(const std::string& name) {
  const auto m = parse_method(name);
  if (!m) throw py::value_error("unknown method: " + name);
  return *m;
}

py::object opt(const std::optional<double>& v) { return v ? py::cast(*v) : py::none(); }

py::dict problem_dict(const LeastSquaresProblem& p) {
  py::dict d;
  d["a"] = from_matrix(p.a);
  d["b"] = from_vector(p.b);
  d["x_star"] = from_vector(p.x_star);
  d["rho"] = p.rho;
  d["kappa"] = p.kappa;
  d["seed"] = p.seed;
  return d;
}

py::dict solve(const FArray& a_in, const CArray& b_in, const std::string& method_name,
               const std::string& precision_name, double d_factor, std::uint64_t seed,
               const std::string& transform_name, std::optional<CArray> x_star,
               std::optional<FArray> b_matrix, bool with_bounds) {
  const Matrix a = to_matrix(a_in);
  const Vector b = to_vector(b_in);
  const Method method = method_arg(method_name);
  const auto choice = parse_precision_choice(precision_name);
  if (!choice) throw py::value_error("unknown precision: " + precision_name);

  std::optional<Matrix> bm;
  if (b_matrix) bm = to_matrix(*b_matrix);
  if (method == Method::NotNormal && !bm) throw py::value_error("nne requires b_matrix");
  const Transform transform = transform_arg(transform_name);

  SolveReport r;
  std::optional<PreparedPreconditioner> prepared;
  std::optional<Matrix> a_p;
  std::optional<ConditionDiagnostics> diag;
  {
    py::gil_scoped_release release;
    switch (method) {
      case Method::Pne:
      case Method::Hpne: {
        PipelineOptions o;
        o.method = method;
        o.precision = *choice;
        o.d_factor = d_factor;
        o.transform = transform;
        o.seed = seed;
        prepared = prepare_preconditioner(a, o);
        a_p = precondition_matrix(a, prepared->pre);
        r = solve_prepared(a, b, method, *prepared, *a_p);
        break;
      }
      case Method::NotNormal: r = solve_notnormal(a, *bm, b); break;
      case Method::Normal: r = solve_normal(a, b); break;
      case Method::Seminormal: r = solve_seminormal(a, b); break;
      case Method::Qr: r = solve_qr_baseline(a, b); break;
    }
  }
  if (x_star) attach_reference(r, to_vector(*x_star));
  if (with_bounds) {
    diag = condition_diagnostics(a);
    use_two_norm(r, diag->two_norm);
    const Preconditioner* pre = prepared ? &prepared->pre : nullptr;
    const double u1 = bound_unit_roundoff(pre ? pre->computed_in : Precision::Double);
    const double u2 = bound_unit_roundoff(Precision::Double);
    const BoundInputs in =
        measure_bound_inputs(a, b, r, pre, u1, u2, MeasureCache{&*diag, a_p ? &*a_p : nullptr});
    r.bounds = evaluate_bounds(in, method);
  }

  py::dict d;
  d["method"] = std::string(to_string(r.method));
  d["x_hat"] = from_vector(r.x_hat);
  d["residual_norm"] = r.residual_norm;
  d["relative_residual"] = r.relative_residual;
  d["relative_error"] = opt(r.relative_error);
  d["precision"] = py::none();
  d["d"] = py::none();
  d["kappa_rs"] = py::none();
  d["kappa_ap"] = py::none();
  if (r.preconditioner) {
    d["precision"] = std::string(to_string(r.preconditioner->computed_in));
    d["d"] = r.preconditioner->d;
    d["kappa_rs"] = r.preconditioner->kappa_rs;
    d["kappa_ap"] = opt(r.preconditioner->kappa_ap);
  }
  d["kappa0"] = r.decision ? py::cast(r.decision->kappa0) : py::none();
  d["escalated_from"] =
      r.escalated_from ? py::cast(std::string(to_string(*r.escalated_from))) : py::none();
  d["bounds"] = r.bounds;
  d["notes"] = r.notes;
  d["wall_ms"] = r.wall_ms;
  return d;
}

BoundInputs bound_inputs_from(const py::dict& d) {
  BoundInputs in;
  auto take = [&](const char* key, std::optional<double>& field) {
    if (d.contains(key) && !d[key].is_none()) field = d[key].cast<double>();
  };
  take("kappa_a", in.kappa_a);
  take("kappa_rs", in.kappa_rs);
  take("kappa_ap", in.kappa_ap);
  take("kappa_apta", in.kappa_apta);
  take("nu_pne", in.nu_pne);
  take("nu_hpne", in.nu_hpne);
  take("u1", in.u1);
  take("u2", in.u2);
  take("eps_a", in.eps_a);
  take("eps_s", in.eps_s);
  take("eps_p", in.eps_p);
  take("eps_b", in.eps_b);
  take("res_ratio_a", in.res_ratio_a);
  take("res_ratio_ap", in.res_ratio_ap);
  return in;
}

py::dict sweep_row(const SweepRow& r) {
  py::dict d;
  d["method"] = r.method;
  d["m"] = r.m;
  d["n"] = r.n;
  d["kappa"] = r.kappa;
  d["rho"] = r.rho;
  d["precision"] = r.precision ? py::cast(*r.precision) : py::none();
  d["d"] = r.d ? py::cast(*r.d) : py::none();
  d["kappa_ap"] = opt(r.kappa_ap);
  d["kappa_rs"] = opt(r.kappa_rs);
  d["rel_error"] = opt(r.rel_error);
  d["rel_residual"] = opt(r.rel_residual);
  d["bound_pne_old"] = opt(r.bound_pne_old);
  d["bound_pne_new"] = opt(r.bound_pne_new);
  d["bound_hpne_old"] = opt(r.bound_hpne_old);
  d["bound_hpne_new"] = opt(r.bound_hpne_new);
  d["bound_ne"] = opt(r.bound_ne);
  d["bound_ls"] = opt(r.bound_ls);
  d["seed"] = r.seed;
  d["trial"] = r.trial;
  d["wall_ms"] = opt(r.wall_ms);
  d["error"] = r.error.empty() ? py::none() : py::cast(r.error);
  return d;
}

}  // namespace

PYBIND11_MODULE(_sketchls, m) {
  m.doc() = "Sketch-preconditioned normal-equation least-squares solvers";

  static py::exception<Error> error(m, "SketchlsError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const std::string msg = std::string(to_string(e.kind())) + ": " + e.what();
      PyErr_SetString(error.ptr(), msg.c_str());
    }
  });

  m.def("generate_problem",
        [](std::size_t rows, std::size_t cols, double kappa, double rho, std::uint64_t seed) {
          return problem_dict(generate_problem(rows, cols, kappa, rho, seed));
        },
        py::arg("m"), py::arg("n"), py::arg("kappa"), py::arg("rho"), py::arg("seed") = 0);

  m.def("solve", &solve, py::arg("a"), py::arg("b"), py::arg("method") = "pne",
        py::arg("precision") = "auto", py::arg("d_factor") = 3.0, py::arg("seed") = 0,
        py::arg("transform") = "dct2", py::arg("x_star") = py::none(),
        py::arg("b_matrix") = py::none(), py::arg("with_bounds") = true);

  m.def("round_to",
        [](const CArray& x, const std::string& precision) {
          const Precision p = precision_arg(precision);
          py::array_t<double> out(x.request().shape);
          const double* src = x.data();
          double* dst = out.mutable_data();
          for (py::ssize_t i = 0; i < x.size(); ++i) dst[i] = round_to(src[i], p);
          return out;
        },
        py::arg("x"), py::arg("precision"));

  m.def("unit_roundoff", [](const std::string& p) { return unit_roundoff(precision_arg(p)); },
        py::arg("precision"));

  m.def("sketch",
        [](const FArray& a, std::size_t d, const std::string& transform, std::uint64_t seed,
           const std::string& precision) {
          const Matrix am = to_matrix(a);
          const SketchOperator op = make_sketch(am.rows(), d, transform_arg(transform), seed);
          return from_matrix(apply_sketch(op, am, precision_arg(precision)));
        },
        py::arg("a"), py::arg("d"), py::arg("transform") = "dct2", py::arg("seed") = 0,
        py::arg("precision") = "double");

  m.def("orthogonal_transform",
        [](const CArray& x, const std::string& transform) {
          return from_vector(orthogonal_transform(transform_arg(transform), to_vector(x)));
        },
        py::arg("x"), py::arg("transform") = "dct2");

  m.def("householder_qr",
        [](const FArray& a) {
          const QRFactors f = householder_qr(to_matrix(a));
          return py::make_tuple(from_matrix(f.q), from_matrix(f.r));
        },
        py::arg("a"));

  m.def("singular_values", [](const FArray& a) { return from_vector(singular_values(to_matrix(a))); },
        py::arg("a"));

  m.def("condition_number",
        [](const FArray& a) { return condition_diagnostics(to_matrix(a)).two_norm_condition; },
        py::arg("a"));

  m.def("estimate_log10_condition",
        [](const FArray& a) {
          const ConditionEstimate e = estimate_log10_condition(to_matrix(a));
          return py::make_tuple(e.kappa0, e.overflowed);
        },
        py::arg("a"));

  m.def("select_precision",
        [](double kappa0, bool overflowed) {
          return std::string(to_string(select_precision(kappa0, overflowed)));
        },
        py::arg("kappa0"), py::arg("overflowed") = false);

  m.def("eta1", &eta1, py::arg("kappa_rs"), py::arg("u1"));

  m.def("evaluate_bounds",
        [](const py::dict& inputs, const std::string& method) {
          return evaluate_bounds(bound_inputs_from(inputs), method_arg(method));
        },
        py::arg("inputs"), py::arg("method"));

  m.def("run_sweep",
        [](std::size_t rows, std::size_t cols, double kappa, std::vector<double> rho_grid,
           std::vector<std::string> methods, const std::string& precision, std::size_t trials,
           std::uint64_t seed, double d_factor) {
          SweepConfig cfg;
          cfg.m = rows;
          cfg.n = cols;
          cfg.kappa = kappa;
          cfg.rho_grid = std::move(rho_grid);
          cfg.methods.clear();
          for (const auto& name : methods) cfg.methods.push_back(method_arg(name));
          const auto choice = parse_precision_choice(precision);
          if (!choice) throw py::value_error("unknown precision: " + precision);
          cfg.precision = *choice;
          cfg.trials_per_point = trials;
          cfg.seed = seed;
          cfg.d_factor = d_factor;
          std::vector<SweepRow> out;
          {
            py::gil_scoped_release release;
            out = run_sweep(cfg);
          }
          py::list rows_out;
          for (const SweepRow& r : out) rows_out.append(sweep_row(r));
          return rows_out;
        },
        py::arg("m"), py::arg("n"), py::arg("kappa"), py::arg("rho_grid"),
        py::arg("methods") = std::vector<std::string>{"qr", "pne", "hpne"},
        py::arg("precision") = "double", py::arg("trials") = 1, py::arg("seed") = 0,
        py::arg("d_factor") = 3.0);

  m.def("sweep_columns", &sweep_columns);

  m.def("run_benchmark",
        [](std::size_t rows, std::vector<std::size_t> n_list, double kappa, std::size_t trials,
           std::uint64_t seed) {
          std::vector<BenchmarkRow> out;
          {
            py::gil_scoped_release release;
            out = run_benchmark(rows, n_list, kappa, trials, seed);
          }
          py::list result;
          for (const BenchmarkRow& r : out) {
            py::dict d;
            d["method"] = r.method;
            d["m"] = r.m;
            d["n"] = r.n;
            d["kappa"] = r.kappa;
            d["trials"] = r.trials;
            d["median_ms"] = r.median_ms;
            d["ratio_to_qr"] = r.ratio_to_qr;
            d["rel_error"] = r.rel_error;
            d["precision"] = r.precision;
            result.append(d);
          }
          return result;
        },
        py::arg("m"), py::arg("n_list"), py::arg("kappa"), py::arg("trials") = 1,
        py::arg("seed") = 0);
}
