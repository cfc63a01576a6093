#pragma once

// Precision-generic Householder QR and triangular solves. Instantiated for
// double, float and the emulated Half so that the binary64 path and the
// low-precision paths share one implementation.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "sketchls/errors.hpp"
#include "sketchls/scalar.hpp"

namespace sketchls::detail {

template <class T>
struct HouseholderFactorization {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<T> a;  // column-major; R on/above the diagonal, reflectors below
  std::vector<T> tau;
};

// Scaled two-norm: the sum of squares is formed on entries divided by the
// largest magnitude, so it cannot overflow for len < max_finite.
template <class T>
T scaled_norm(const T* x, std::size_t len) {
  using std::abs;
  using std::sqrt;
  T scale(0);
  for (std::size_t i = 0; i < len; ++i) {
    const T ax = abs(x[i]);
    if (ax > scale) scale = ax;
  }
  if (scale == T(0)) return T(0);
  T sum(0);
  for (std::size_t i = 0; i < len; ++i) {
    const T t = x[i] / scale;
    sum += t * t;
  }
  return scale * sqrt(sum);
}

template <class T>
HouseholderFactorization<T> householder_factor(std::size_t m, std::size_t n, std::vector<T> a) {
  using std::isfinite;
  if (m < n) fail(ErrorKind::InvalidArgument, "householder_qr requires rows >= cols");
  HouseholderFactorization<T> f{m, n, std::move(a), std::vector<T>(n, T(0))};
  auto& A = f.a;
  for (std::size_t k = 0; k < n; ++k) {
    T* x = &A[k * m + k];
    const std::size_t len = m - k;
    const T norm = scaled_norm(x, len);
    if (!isfinite(norm)) fail(ErrorKind::Overflow, "non-finite column norm in QR");
    if (norm == T(0)) {
      fail(ErrorKind::RankDeficient, "zero pivot column " + std::to_string(k));
    }
    const T alpha = x[0];
    bool tail_zero = true;
    for (std::size_t i = 1; i < len && tail_zero; ++i) tail_zero = x[i] == T(0);
    if (tail_zero) {
      // Already triangular in this column: H = I, as LAPACK does.
      f.tau[k] = T(0);
      continue;
    }
    const T beta = alpha >= T(0) ? -norm : norm;
    const T v0 = alpha - beta;
    for (std::size_t i = 1; i < len; ++i) x[i] = x[i] / v0;
    const T tau = (beta - alpha) / beta;
    f.tau[k] = tau;
    x[0] = beta;
    for (std::size_t j = k + 1; j < n; ++j) {
      T* c = &A[j * m + k];
      T w = c[0];
      for (std::size_t i = 1; i < len; ++i) w += x[i] * c[i];
      w = tau * w;
      c[0] -= w;
      for (std::size_t i = 1; i < len; ++i) c[i] -= w * x[i];
    }
  }
  return f;
}

// Thin Q (m×n), accumulated backwards from [I; 0].
template <class T>
std::vector<T> householder_form_q(const HouseholderFactorization<T>& f) {
  const std::size_t m = f.m;
  const std::size_t n = f.n;
  std::vector<T> q(m * n, T(0));
  for (std::size_t j = 0; j < n; ++j) q[j * m + j] = T(1);
  for (std::size_t kk = n; kk-- > 0;) {
    const T* v = &f.a[kk * m + kk];
    const T tau = f.tau[kk];
    const std::size_t len = m - kk;
    for (std::size_t j = kk; j < n; ++j) {
      T* c = &q[j * m + kk];
      T w = c[0];
      for (std::size_t i = 1; i < len; ++i) w += v[i] * c[i];
      w = tau * w;
      c[0] -= w;
      for (std::size_t i = 1; i < len; ++i) c[i] -= w * v[i];
    }
  }
  return q;
}

template <class T>
std::vector<T> householder_extract_r(const HouseholderFactorization<T>& f) {
  std::vector<T> r(f.n * f.n, T(0));
  for (std::size_t j = 0; j < f.n; ++j)
    for (std::size_t i = 0; i <= j; ++i) r[j * f.n + i] = f.a[j * f.m + i];
  return r;
}

// In-place solve with an n×n upper-triangular r (column-major):
// r x = b, or rᵀ x = b when transposed.
template <class T>
void upper_triangular_solve(std::size_t n, const T* r, T* x, bool transposed) {
  for (std::size_t j = 0; j < n; ++j) {
    if (r[j * n + j] == T(0)) {
      fail(ErrorKind::SingularTriangular, "zero diagonal entry " + std::to_string(j));
    }
  }
  if (!transposed) {
    for (std::size_t j = n; j-- > 0;) {
      x[j] = x[j] / r[j * n + j];
      const T xj = x[j];
      const T* rj = &r[j * n];
      for (std::size_t i = 0; i < j; ++i) x[i] -= rj[i] * xj;
    }
  } else {
    for (std::size_t j = 0; j < n; ++j) {
      const T* rj = &r[j * n];
      T s = x[j];
      for (std::size_t i = 0; i < j; ++i) s -= rj[i] * x[i];
      x[j] = s / rj[j];
    }
  }
}

template <class T>
std::vector<T> convert_to(std::span<const double> v) {
  std::vector<T> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = ScalarTraits<T>::from(v[i]);
  return out;
}

template <class T>
std::vector<double> convert_from(const std::vector<T>& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = ScalarTraits<T>::to_double(v[i]);
  return out;
}

}  // namespace sketchls::detail
