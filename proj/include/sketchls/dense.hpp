#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "sketchls/matrix.hpp"

namespace sketchls {

struct QRFactors {
  Matrix q;  // m×n, orthonormal columns
  Matrix r;  // n×n, upper triangular, exactly zero below the diagonal
};

struct ConditionDiagnostics {
  double two_norm = 0.0;
  double two_norm_condition = 1.0;
  std::optional<std::vector<double>> singular_values;  // descending
};

// Thin Householder QR. Reflector sign follows the leading entry, so the
// diagonal of R may be negative. Throws RankDeficient on a zero pivot column.
QRFactors householder_qr(const Matrix& a);
// R factor only; Q is never accumulated.
Matrix householder_r(const Matrix& a);

// Solves r·X = rhs (or rᵀ·X = rhs) for upper-triangular r.
Matrix triangular_solve(const Matrix& r, const Matrix& rhs, bool transposed = false);
Vector triangular_solve(const Matrix& r, std::span<const double> rhs, bool transposed = false);
// Solves X·r = a for X, column by column. Used to form A·R⁻¹.
Matrix solve_right_upper(const Matrix& a, const Matrix& r);

// LU with partial pivoting (largest magnitude, lowest row on ties).
// Throws NumericallySingular when a pivot falls below n·u·max|m|.
Vector lu_solve(const Matrix& m, std::span<const double> rhs);

// Cholesky solve of a symmetric system; the input is symmetrized as
// (s + sᵀ)/2 first. Throws NotPositiveDefinite on a nonpositive pivot.
Vector cholesky_solve(const Matrix& s, std::span<const double> rhs);

// Singular values by one-sided Jacobi (applied to the R factor of a
// Householder QR). Sweep cap 30; throws NoConvergence beyond that.
std::vector<double> singular_values(const Matrix& a);
ConditionDiagnostics condition_diagnostics(const Matrix& a);

// Applies s⁻¹ (transposed = false) or s⁻ᵀ (transposed = true) to a vector.
using InverseApply = std::function<Vector(std::span<const double>, bool transposed)>;

// Hager's lower estimate of ‖s⁻¹‖₁ from at most 5 forward/adjoint solve pairs.
double hager_one_norm_inverse_estimate(const InverseApply& solve, std::size_t n);

}  // namespace sketchls
