#include "sketchls/dense.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sketchls/detail/householder.hpp"
#include "sketchls/errors.hpp"
#include "sketchls/scalar.hpp"

namespace sketchls {

namespace {

constexpr int kJacobiSweepCap = 30;
constexpr double kJacobiTangentTol = 1e-14;
constexpr int kHagerIterations = 5;

void require_upper_square(const Matrix& r) {
  if (r.rows() != r.cols()) fail(ErrorKind::DimensionMismatch, "triangular factor must be square");
}

// One-sided (Hestenes) Jacobi on the columns of w.
std::vector<double> jacobi_columns(Matrix w) {
  const std::size_t n = w.cols();
  for (int sweep = 0; sweep < kJacobiSweepCap; ++sweep) {
    bool significant = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        auto wp = w.col(p);
        auto wq = w.col(q);
        const double alpha = dot(wp, wp);
        const double beta = dot(wq, wq);
        const double gamma = dot(wp, wq);
        if (gamma == 0.0 || std::fabs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        double t;
        if (std::fabs(zeta) > 1e150) {
          t = 0.5 / zeta;
        } else {
          t = std::copysign(1.0, zeta) / (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
        }
        if (std::fabs(t) >= kJacobiTangentTol) significant = true;
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < wp.size(); ++i) {
          const double a = wp[i];
          const double b = wq[i];
          wp[i] = c * a - s * b;
          wq[i] = s * a + c * b;
        }
      }
    }
    if (!significant) {
      std::vector<double> sv(n);
      for (std::size_t j = 0; j < n; ++j) sv[j] = norm2(w.col(j));
      std::sort(sv.begin(), sv.end(), std::greater<>());
      return sv;
    }
  }
  fail(ErrorKind::NoConvergence, "one-sided Jacobi exceeded the sweep cap");
}

}  // namespace

QRFactors householder_qr(const Matrix& a) {
  auto f = detail::householder_factor<double>(a.rows(), a.cols(), a.values());
  Matrix q(a.rows(), a.cols(), detail::householder_form_q(f));
  Matrix r(a.cols(), a.cols(), detail::householder_extract_r(f));
  return {std::move(q), std::move(r)};
}

Matrix householder_r(const Matrix& a) {
  auto f = detail::householder_factor<double>(a.rows(), a.cols(), a.values());
  return Matrix(a.cols(), a.cols(), detail::householder_extract_r(f));
}

Matrix triangular_solve(const Matrix& r, const Matrix& rhs, bool transposed) {
  require_upper_square(r);
  if (rhs.rows() != r.rows()) fail(ErrorKind::DimensionMismatch, "triangular_solve: rhs rows");
  Matrix x = rhs;
  for (std::size_t j = 0; j < x.cols(); ++j) {
    detail::upper_triangular_solve(r.rows(), r.values().data(), x.col(j).data(), transposed);
  }
  return x;
}

Vector triangular_solve(const Matrix& r, std::span<const double> rhs, bool transposed) {
  require_upper_square(r);
  if (rhs.size() != r.rows()) fail(ErrorKind::DimensionMismatch, "triangular_solve: rhs length");
  Vector x(rhs.begin(), rhs.end());
  detail::upper_triangular_solve(r.rows(), r.values().data(), x.data(), transposed);
  return x;
}

Matrix solve_right_upper(const Matrix& a, const Matrix& r) {
  require_upper_square(r);
  if (a.cols() != r.rows()) fail(ErrorKind::DimensionMismatch, "solve_right_upper: shapes");
  const std::size_t n = r.rows();
  for (std::size_t j = 0; j < n; ++j) {
    if (r(j, j) == 0.0) {
      fail(ErrorKind::SingularTriangular, "zero diagonal entry " + std::to_string(j));
    }
  }
  Matrix x = a;
  x.set_storage(Precision::Double);
  for (std::size_t j = 0; j < n; ++j) {
    auto xj = x.col(j);
    for (std::size_t k = 0; k < j; ++k) {
      const double rkj = r(k, j);
      if (rkj == 0.0) continue;
      auto xk = x.col(k);
      for (std::size_t i = 0; i < xj.size(); ++i) xj[i] -= xk[i] * rkj;
    }
    const double d = r(j, j);
    for (double& v : xj) v /= d;
  }
  return x;
}

Vector lu_solve(const Matrix& m, std::span<const double> rhs) {
  if (m.rows() != m.cols()) fail(ErrorKind::DimensionMismatch, "lu_solve: matrix not square");
  const std::size_t n = m.rows();
  if (rhs.size() != n) fail(ErrorKind::DimensionMismatch, "lu_solve: rhs length");
  Matrix lu = m;
  Vector x(rhs.begin(), rhs.end());
  const double threshold = static_cast<double>(n) * unit_roundoff(Precision::Double) * max_abs(m);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::fabs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::fabs(lu(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (!(best >= threshold) || best == 0.0) {
      fail(ErrorKind::NumericallySingular, "pivot below threshold at step " + std::to_string(k));
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
      std::swap(x[k], x[piv]);
    }
    const double pivot = lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) lu(i, k) /= pivot;
    for (std::size_t j = k + 1; j < n; ++j) {
      const double ukj = lu(k, j);
      if (ukj == 0.0) continue;
      for (std::size_t i = k + 1; i < n; ++i) lu(i, j) -= lu(i, k) * ukj;
    }
  }
  // forward with unit-lower L, then back with U
  for (std::size_t k = 0; k < n; ++k) {
    const double xk = x[k];
    for (std::size_t i = k + 1; i < n; ++i) x[i] -= lu(i, k) * xk;
  }
  for (std::size_t k = n; k-- > 0;) {
    x[k] /= lu(k, k);
    const double xk = x[k];
    for (std::size_t i = 0; i < k; ++i) x[i] -= lu(i, k) * xk;
  }
  return x;
}

Vector cholesky_solve(const Matrix& s, std::span<const double> rhs) {
  if (s.rows() != s.cols()) fail(ErrorKind::DimensionMismatch, "cholesky_solve: not square");
  const std::size_t n = s.rows();
  if (rhs.size() != n) fail(ErrorKind::DimensionMismatch, "cholesky_solve: rhs length");
  const double tol = 10.0 * unit_roundoff(Precision::Double) * max_abs(s);
  Matrix r(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i <= j; ++i) {
      if (std::fabs(s(i, j) - s(j, i)) > tol) {
        fail(ErrorKind::InvalidArgument, "cholesky_solve: matrix is not symmetric");
      }
      r(i, j) = 0.5 * (s(i, j) + s(j, i));
    }
  }
  // Upper Cholesky s = rᵀr, column by column.
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      double v = r(i, j);
      for (std::size_t k = 0; k < i; ++k) v -= r(k, i) * r(k, j);
      r(i, j) = v / r(i, i);
    }
    double d = r(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= r(k, j) * r(k, j);
    if (!(d > 0.0) || !std::isfinite(d)) {
      fail(ErrorKind::NotPositiveDefinite, "nonpositive pivot at step " + std::to_string(j));
    }
    r(j, j) = std::sqrt(d);
  }
  Vector x(rhs.begin(), rhs.end());
  detail::upper_triangular_solve(n, r.values().data(), x.data(), true);
  detail::upper_triangular_solve(n, r.values().data(), x.data(), false);
  return x;
}

std::vector<double> singular_values(const Matrix& a) {
  if (a.rows() < a.cols() || a.cols() == 0) {
    fail(ErrorKind::InvalidArgument, "singular_values requires rows >= cols >= 1");
  }
  try {
    return jacobi_columns(householder_r(a));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::RankDeficient) throw;
    return jacobi_columns(a);
  }
}

ConditionDiagnostics condition_diagnostics(const Matrix& a) {
  auto sv = singular_values(a);
  ConditionDiagnostics d;
  d.two_norm = sv.front();
  d.two_norm_condition =
      sv.back() > 0.0 ? sv.front() / sv.back() : std::numeric_limits<double>::infinity();
  d.singular_values = std::move(sv);
  return d;
}

double hager_one_norm_inverse_estimate(const InverseApply& solve, std::size_t n) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "hager estimate needs n >= 1");
  Vector x(n, 1.0 / static_cast<double>(n));
  double estimate = 0.0;
  for (int iter = 0; iter < kHagerIterations; ++iter) {
    const Vector y = solve(x, false);
    double y1 = 0.0;
    for (double v : y) y1 += std::fabs(v);
    estimate = std::max(estimate, y1);
    Vector xi(n);
    for (std::size_t i = 0; i < n; ++i) xi[i] = y[i] >= 0.0 ? 1.0 : -1.0;
    const Vector z = solve(xi, true);
    std::size_t j = 0;
    double zmax = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::fabs(z[i]) > zmax) {
        zmax = std::fabs(z[i]);
        j = i;
      }
    }
    if (iter > 0 && zmax <= dot(z, x)) break;
    std::fill(x.begin(), x.end(), 0.0);
    x[j] = 1.0;
  }
  return estimate;
}

}  // namespace sketchls
