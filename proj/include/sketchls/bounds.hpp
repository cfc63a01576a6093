#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>

#include "sketchls/dense.hpp"
#include "sketchls/matrix.hpp"
#include "sketchls/solvers.hpp"

namespace sketchls {

// Scalars entering the perturbation bounds. Absent fields are reported as
// MissingField by the bounds that need them.
struct BoundInputs {
  std::optional<double> kappa_a;       // κ(A)
  std::optional<double> kappa_rs;      // κ(R_s)
  std::optional<double> kappa_ap;      // κ(A_p)
  std::optional<double> kappa_apta;    // κ(A_pᵀA)
  std::optional<double> nu_pne;        // ‖R_s x̂‖ / (‖R_s‖‖x̂‖) ≤ 1
  std::optional<double> nu_hpne;       // ‖A_p‖‖A‖ / ‖A_pᵀA‖ ≥ 1
  std::optional<double> u1;            // preconditioner precision
  std::optional<double> u2;            // working precision
  std::optional<double> eps_a;
  std::optional<double> eps_s;
  std::optional<double> eps_p;
  std::optional<double> eps_b;
  std::optional<double> res_ratio_a;   // ‖A x̂ − b‖ / (‖A‖‖x̂‖)
  std::optional<double> res_ratio_ap;  // ‖A_p ŷ − b‖ / (‖A_p‖‖ŷ‖)
};

enum class BoundVariant { Old, New };
enum class NormalKind { Normal, Seminormal };

// η₁ = |κ(R_s)u₁ / (1 − κ(R_s)u₁)|. Throws PoleAtOne when κ(R_s)u₁ = 1.
double eta1(double kappa_rs, double u1);

// κ(A)·ε_A·(1 + κ(A)·res): the least-squares problem itself.
double bound_ls(const BoundInputs& in);
// κ(A)²·ε_A·(res + 1 + ε_A): normal and seminormal equations share it.
double bound_ne_family(const BoundInputs& in, NormalKind kind = NormalKind::Normal);
// Old: κ(R_s)κ(A_p)·ν·(u₂ + κ(A_p)·η₁·(res_p + u₂)).
// New: κ(R_s)κ(A_p)·u₂·(κ(A_p)κ(R_s)·res + 1 + κ(A)·u₂).
double bound_pne(const BoundInputs& in, BoundVariant variant);
// Old: κ(A_pᵀA)·ν·(η₁·res + (1 + η₁)·u₂).
// New: κ(A_pᵀA)·ν·u₂·(κ(R_s)·res + 1 + κ(A)·u₂).
double bound_hpne(const BoundInputs& in, BoundVariant variant);
// κ(BᵀA)·ν_B·(ε_B·res + (1 + ε_B)·ε_A), ν_B = ‖B‖‖A‖/‖BᵀA‖.
double bound_notnormal(const BoundInputs& in, double kappa_bta, double nu_b);

// Optional precomputed quantities, so sweeps do not refactor A per method.
struct MeasureCache {
  const ConditionDiagnostics* a_diagnostics = nullptr;
  const Matrix* a_p = nullptr;
};

// Measures every κ by SVD, both ν's and both residual ratios, and sets the ε
// terms to unit roundoffs: ε_A = ε_p = ε_B = u₂, ε_s = u₁. Preconditioner
// quantities stay empty when pre is null.
BoundInputs measure_bound_inputs(const Matrix& a, std::span<const double> b,
                                 const SolveReport& report, const Preconditioner* pre, double u1,
                                 double u2, const MeasureCache& cache = {});

// Every bound applicable to the report's method, keyed by its CSV name:
// "ls", "ne", "sne", "pne_old", "pne_new", "hpne_old", "hpne_new".
// A bound that cannot be evaluated (pole, missing input) is omitted.
std::map<std::string, double> evaluate_bounds(const BoundInputs& in, Method method);

}  // namespace sketchls
