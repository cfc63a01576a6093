#pragma once

#include <cstdint>

#include "sketchls/matrix.hpp"
#include "sketchls/rng.hpp"

namespace sketchls::test {

inline Matrix gaussian(std::size_t m, std::size_t n, std::uint64_t seed) {
  rng::CounterStream s(seed);
  Matrix a(m, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) a(i, j) = s.normal();
  return a;
}

inline Vector gaussian_vector(std::size_t n, std::uint64_t seed) {
  rng::CounterStream s(seed);
  Vector v(n);
  for (double& x : v) x = s.normal();
  return v;
}

inline double relative_difference(std::span<const double> a, std::span<const double> b) {
  return norm2(subtract(a, b)) / norm2(b);
}

inline double orthogonality_error(const Matrix& q) {
  const Matrix g = multiply_transposed(q, q);
  return frobenius_norm(subtract(g, Matrix::identity(q.cols())));
}

}  // namespace sketchls::test
