#pragma once

#include <cstdint>
#include <vector>

#include "sketchls/matrix.hpp"

namespace sketchls {

// A least-squares problem with known solution: ‖x*‖ = 1, ‖A‖ = 1,
// κ(A) = kappa and ‖A x* − b‖ = rho with the residual orthogonal to range(A).
struct LeastSquaresProblem {
  Matrix a;
  Vector b;
  Vector x_star;
  double rho = 0.0;
  double kappa = 1.0;
  std::uint64_t seed = 0;
};

// Q factor of a seeded m×k standard Gaussian matrix.
Matrix random_orthogonal_columns(std::size_t m, std::size_t k, std::uint64_t seed);

// n×n upper triangular R with ‖R‖ = 1 and κ(R) = kappa: singular values
// log-spaced from 1 down to 1/kappa, rotated by random orthogonal U, V and
// re-triangularized by QR.
Matrix triangular_with_condition(std::size_t n, double kappa, std::uint64_t seed);

// A = Q₁R; x* a normalized Gaussian; b = A x* + ρ·e_r/‖e_r‖ where
// e_r = (I − Q₁Q₁ᵀ)·g for a Gaussian g.
LeastSquaresProblem generate_problem(std::size_t m, std::size_t n, double kappa, double rho,
                                     std::uint64_t seed);

// ρ values log-spaced over [lo, hi], ascending.
std::vector<double> log_spaced(double lo, double hi, std::size_t count);

}  // namespace sketchls
