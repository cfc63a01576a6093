#include "sketchls/probgen.hpp"

#include <cmath>

#include "sketchls/dense.hpp"
#include "sketchls/errors.hpp"
#include "sketchls/rng.hpp"

namespace sketchls {

namespace {

enum Stream : std::uint64_t { kQ1 = 11, kU = 12, kV = 13, kX = 14, kResidual = 15 };

Vector gaussian_vector(std::size_t len, std::uint64_t seed) {
  rng::CounterStream s(seed);
  Vector v(len);
  for (double& x : v) x = s.normal();
  return v;
}

// (I − QQᵀ)·g, applied twice so that the range component drops to roundoff
// relative to the projected vector rather than to g.
Vector project_out(const Matrix& q, Vector g) {
  for (int pass = 0; pass < 2; ++pass) {
    const Vector c = matvec_transposed(q, g);
    const Vector qc = matvec(q, c);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] -= qc[i];
  }
  return g;
}

}  // namespace

Matrix random_orthogonal_columns(std::size_t m, std::size_t k, std::uint64_t seed) {
  if (k > m || k == 0) fail(ErrorKind::InvalidArgument, "random_orthogonal_columns needs 1 <= k <= m");
  Matrix g(m, k, gaussian_vector(m * k, seed));
  return householder_qr(g).q;
}

Matrix triangular_with_condition(std::size_t n, double kappa, std::uint64_t seed) {
  if (!(kappa >= 1.0) || n == 0) fail(ErrorKind::InvalidArgument, "need n >= 1 and kappa >= 1");
  const Matrix u = random_orthogonal_columns(n, n, rng::derive(seed, {kU}));
  const Matrix v = random_orthogonal_columns(n, n, rng::derive(seed, {kV}));
  Matrix us = u;
  for (std::size_t j = 0; j < n; ++j) {
    const double exponent = n == 1 ? 0.0 : static_cast<double>(j) / static_cast<double>(n - 1);
    const double sigma = std::pow(kappa, -exponent);
    for (double& x : us.col(j)) x *= sigma;
  }
  const Matrix m = multiply(us, transpose(v));
  return householder_r(m);
}

LeastSquaresProblem generate_problem(std::size_t m, std::size_t n, double kappa, double rho,
                                     std::uint64_t seed) {
  if (!(m > n) || n == 0) fail(ErrorKind::InvalidArgument, "generate_problem needs m > n >= 1");
  if (!(kappa >= 1.0)) fail(ErrorKind::InvalidArgument, "kappa must be >= 1");
  if (!(rho >= 0.0)) fail(ErrorKind::InvalidArgument, "rho must be >= 0");

  LeastSquaresProblem p;
  p.rho = rho;
  p.kappa = kappa;
  p.seed = seed;

  const Matrix q1 = random_orthogonal_columns(m, n, rng::derive(seed, {kQ1}));
  const Matrix r = triangular_with_condition(n, kappa, seed);
  p.a = multiply(q1, r);

  Vector x = gaussian_vector(n, rng::derive(seed, {kX}));
  const double xn = norm2(x);
  for (double& v : x) v /= xn;
  p.x_star = std::move(x);

  p.b = matvec(p.a, p.x_star);
  if (rho == 0.0) return p;

  for (std::uint64_t attempt = 0; attempt < 3; ++attempt) {
    Vector e = project_out(q1, gaussian_vector(m, rng::derive(seed, {kResidual, attempt})));
    const double en = norm2(e);
    if (en < 1e-12) continue;
    for (std::size_t i = 0; i < m; ++i) p.b[i] += rho * (e[i] / en);
    return p;
  }
  fail(ErrorKind::DegenerateResidual, "residual direction vanished after 3 draws");
}

std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
  std::vector<double> out;
  if (count == 0) return out;
  if (!(lo > 0.0 && hi >= lo)) fail(ErrorKind::InvalidArgument, "log_spaced needs 0 < lo <= hi");
  if (count == 1) return {lo};
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    out.push_back(std::pow(10.0, a + t * (b - a)));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace sketchls
