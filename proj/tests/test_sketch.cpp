#include <doctest.h>

#include <cmath>
#include <bit>
#include <numbers>

#include "sketchls/dense.hpp"
#include "sketchls/errors.hpp"
#include "sketchls/scalar.hpp"
#include "sketchls/sketch.hpp"
#include "support.hpp"

using namespace sketchls;
using test::gaussian;

namespace {

Vector direct_dct2(std::span<const double> x) {
  const std::size_t n = x.size();
  Vector y(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    long double s = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
      s += static_cast<long double>(x[i]) *
           std::cos(std::numbers::pi_v<long double> * (2.0L * i + 1.0L) * k / (2.0L * n));
    }
    const long double c = k == 0 ? std::sqrt(1.0L / n) : std::sqrt(2.0L / n);
    y[k] = static_cast<double>(c * s);
  }
  return y;
}

Vector direct_wht(std::span<const double> x) {
  const std::size_t n = x.size();
  Vector y(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += (std::popcount(i & k) % 2 ? -1.0 : 1.0) * x[i];
    y[k] = s / std::sqrt(static_cast<double>(n));
  }
  return y;
}

}  // namespace

TEST_CASE("DCT-II agrees with the direct sum") {
  for (std::size_t n : {1u, 2u, 3u, 5u, 8u, 12u, 17u, 30u, 64u, 97u, 100u, 210u}) {
    const Vector x = test::gaussian_vector(n, 100 + n);
    const Vector fast = orthogonal_transform(Transform::Dct2, x);
    const Vector ref = direct_dct2(x);
    CHECK_MESSAGE(test::relative_difference(fast, ref) <= 1e-13, "n = " << n);
  }
}

TEST_CASE("WHT agrees with the direct sum and zero-pads") {
  for (std::size_t n : {1u, 2u, 4u, 16u, 64u}) {
    const Vector x = test::gaussian_vector(n, 200 + n);
    CHECK(test::relative_difference(orthogonal_transform(Transform::Wht, x), direct_wht(x)) <= 1e-14);
  }
  const Vector x = test::gaussian_vector(5, 7);
  Vector padded = x;
  padded.resize(8, 0.0);
  const Vector y = orthogonal_transform(Transform::Wht, x);
  REQUIRE(y.size() == 8);
  CHECK(test::relative_difference(y, direct_wht(padded)) <= 1e-14);
}

TEST_CASE("sketch operators are deterministic") {
  const SketchOperator a = make_sketch(4, 2, Transform::Dct2, 99);
  const SketchOperator b = make_sketch(4, 2, Transform::Dct2, 99);
  CHECK(a == b);
  CHECK(make_sketch(4, 2, Transform::Dct2, 100) != a);
  const SketchOperator c = make_sketch(1000, 300, Transform::Dct2, 1);
  CHECK(c.sampled_rows.size() == 300);
  CHECK(c.signs.size() == 1000);
  CHECK(make_sketch(1000, 300, Transform::Wht, 1).padded_rows == 1024);
}

TEST_CASE("sign frequency over many seeds") {
  int plus = 0;
  const int trials = 10000;
  for (int s = 0; s < trials; ++s) plus += make_sketch(2, 1, Transform::Dct2, s).signs[0] > 0;
  const double p = static_cast<double>(plus) / trials;
  CHECK(p >= 0.47);
  CHECK(p <= 0.53);
}

TEST_CASE("two-point Hadamard sketch by hand") {
  SketchOperator op;
  op.m = 2;
  op.padded_rows = 2;
  op.d = 2;
  op.signs = {1, 1};
  op.sampled_rows = {0, 1};
  op.transform = Transform::Wht;
  const Matrix out = apply_sketch(op, Matrix::from_rows({{1.0}, {0.0}}));
  CHECK(out(0, 0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(out(1, 0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("full unsigned sampling preserves column norms") {
  for (Transform t : {Transform::Dct2, Transform::Wht}) {
    const std::size_t m = 64;
    SketchOperator op = make_sketch(m, m, t, 3);
    std::fill(op.signs.begin(), op.signs.end(), 1);
    for (std::size_t i = 0; i < m; ++i) op.sampled_rows[i] = i;
    const Matrix a = gaussian(m, 3, 4);
    const Matrix out = apply_sketch(op, a);
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(norm2(out.col(j)) == doctest::Approx(norm2(a.col(j))).epsilon(1e-13));
    }
  }
}

TEST_CASE("sketched orthonormal basis stays well conditioned") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Matrix q = householder_qr(gaussian(1024, 16, 500 + seed)).q;
    const Matrix sq = apply_sketch(make_sketch(1024, 48, Transform::Dct2, seed), q);
    const auto s = singular_values(sq);
    CHECK(s.front() <= 2.0);
    CHECK(s.back() >= 0.3);
  }
}

TEST_CASE("sketch arithmetic in low precision stays close") {
  const Matrix a = gaussian(200, 5, 8);
  const SketchOperator op = make_sketch(200, 30, Transform::Dct2, 9);
  const Matrix ref = apply_sketch(op, a);
  const Matrix s32 = apply_sketch(op, a, Precision::Single);
  const Matrix s16 = apply_sketch(op, a, Precision::Half);
  CHECK(frobenius_norm(subtract(s32, ref)) / frobenius_norm(ref) <= 1e-5);
  CHECK(frobenius_norm(subtract(s16, ref)) / frobenius_norm(ref) <= 5e-2);
  for (double v : s16.values()) CHECK(round_to_half(v) == v);
}

TEST_CASE("sample size formula") {
  EmbeddingParams p;
  p.n = 100;
  p.m = 10000;
  p.coherence_mu = 100.0 / 10000.0;
  p.epsilon = 0.5;
  p.delta = 0.01;
  CHECK(sample_size_lower_bound(p) == 8597);

  for (double eps : {0.5, 0.25}) {
    EmbeddingParams base = p;
    base.epsilon = eps;
    EmbeddingParams third = p;
    third.epsilon = eps / 3.0;
    const double ratio = static_cast<double>(sample_size_lower_bound(third)) /
                         static_cast<double>(sample_size_lower_bound(base));
    const double drift = (1.0 + eps / 9.0) / (1.0 + eps / 3.0);
    CHECK(ratio == doctest::Approx(9.0 * drift).epsilon(1e-3));
    if (eps <= 0.25) CHECK(drift >= 0.94);
  }

  EmbeddingParams bad = p;
  bad.delta = 100.0;
  CHECK_THROWS_AS(sample_size_lower_bound(bad), Error);
}

TEST_CASE("coherence") {
  Matrix e(6, 2);
  e(0, 0) = 1.0;
  e(1, 1) = 1.0;
  CHECK(coherence(e) == 1.0);

  Matrix h(8, 2);
  for (std::size_t i = 0; i < 8; ++i) {
    h(i, 0) = 1.0 / std::sqrt(8.0);
    h(i, 1) = (i % 2 ? -1.0 : 1.0) / std::sqrt(8.0);
  }
  CHECK(coherence(h) == doctest::Approx(0.25).epsilon(1e-15));

  const Matrix q = householder_qr(gaussian(256, 8, 21)).q;
  const double mu = coherence(q);
  CHECK(mu >= 8.0 / 256.0);
  CHECK(mu <= 1.0);

  CHECK_THROWS_AS(coherence(gaussian(10, 2, 1)), Error);
}
