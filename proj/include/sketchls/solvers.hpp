#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sketchls/matrix.hpp"
#include "sketchls/precision.hpp"
#include "sketchls/sketch.hpp"

namespace sketchls {

enum class Method { Normal, Pne, Hpne, Seminormal, NotNormal, Qr };

// "ne", "pne", "hpne", "sne", "nne", "qr".
std::string_view to_string(Method m) noexcept;
std::optional<Method> parse_method(std::string_view name) noexcept;

struct Preconditioner {
  Matrix r_s;                          // n×n upper triangular, binary64 after promotion
  Precision computed_in = Precision::Double;
  double kappa_rs = 1.0;
  std::optional<double> kappa_ap;      // filled by precondition_matrix
  std::size_t d = 0;                   // sketch rows used
  std::uint64_t seed = 0;
};

struct SolveReport {
  Method method = Method::Qr;
  Vector x_hat;
  std::optional<Vector> y_hat;         // PNE only: solution of the preconditioned system
  double residual_norm = 0.0;          // ‖A x̂ − b‖
  double relative_residual = 0.0;      // ‖A x̂ − b‖ / (‖A‖ ‖x̂‖)
  bool residual_norm_is_frobenius = true;
  std::optional<double> relative_error;  // ‖x̂ − x*‖ / ‖x̂‖
  std::optional<Preconditioner> preconditioner;
  std::optional<PrecisionDecision> decision;
  std::optional<Precision> escalated_from;
  std::map<std::string, double> bounds;
  std::vector<std::string> notes;
  double wall_ms = 0.0;
};

// Sets relative_error = ‖x̂ − x*‖/‖x̂‖.
void attach_reference(SolveReport& report, std::span<const double> x_star);
// Recomputes relative_residual with a known ‖A‖₂.
void use_two_norm(SolveReport& report, double a_two_norm);

SolveReport solve_qr_baseline(const Matrix& a, std::span<const double> b);
SolveReport solve_normal(const Matrix& a, std::span<const double> b);
SolveReport solve_seminormal(const Matrix& a, std::span<const double> b);
SolveReport solve_notnormal(const Matrix& a, const Matrix& b_matrix, std::span<const double> rhs);

// Sketches a (demoted to p, sketch arithmetic in p), factors the sketch in p,
// promotes R_s to binary64 and records κ(R_s). d = ⌈d_factor·n⌉.
Preconditioner build_preconditioner(const Matrix& a, double d_factor, Transform transform,
                                    Precision p, std::uint64_t seed);

// A_p = A·R_s⁻¹ in binary64; fills pre.kappa_ap.
Matrix precondition_matrix(const Matrix& a, Preconditioner& pre);

// PNE: A_pᵀA_p y = A_pᵀb by Cholesky (LU if that breaks down), then R_s x = y.
SolveReport solve_pne(const Matrix& a, std::span<const double> b, const Preconditioner& pre);
SolveReport solve_pne(const Matrix& a, std::span<const double> b, const Preconditioner& pre,
                      const Matrix& a_p);
// HPNE: A_pᵀA x = A_pᵀb by LU with partial pivoting.
SolveReport solve_hpne(const Matrix& a, std::span<const double> b, const Preconditioner& pre);
SolveReport solve_hpne(const Matrix& a, std::span<const double> b, const Preconditioner& pre,
                       const Matrix& a_p);

struct PipelineOptions {
  Method method = Method::Pne;  // Pne or Hpne
  PrecisionChoice precision = PrecisionChoice::Auto;
  double d_factor = 3.0;
  Transform transform = Transform::Dct2;
  std::uint64_t seed = 0;
};

struct PreparedPreconditioner {
  Preconditioner pre;
  std::optional<PrecisionDecision> decision;
  std::optional<Precision> escalated_from;
};

// Precision selection and preconditioner construction, including the single
// escalation on RankDeficient or Overflow. options.method is ignored.
PreparedPreconditioner prepare_preconditioner(const Matrix& a, const PipelineOptions& options);

// PNE or HPNE with a prepared preconditioner and a_p = A·R_s⁻¹.
SolveReport solve_prepared(const Matrix& a, std::span<const double> b, Method method,
                           const PreparedPreconditioner& prepared, const Matrix& a_p);

// Optional condition estimate and precision selection, low-precision sketch
// preconditioner, promotion, binary64 preconditioning and the PNE/HPNE solve.
// A RankDeficient or Overflow preconditioner is retried once at the next
// higher precision.
SolveReport algorithm1_pipeline(const Matrix& a, std::span<const double> b,
                                const PipelineOptions& options);

}  // namespace sketchls
