#include "sketchls/sketch.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "sketchls/detail/fft.hpp"
#include "sketchls/errors.hpp"
#include "sketchls/rng.hpp"
#include "sketchls/scalar.hpp"

namespace sketchls {

namespace {

constexpr std::uint64_t kSignStream = 1;
constexpr std::uint64_t kSampleStream = 2;

// Reorders x for the N-point DCT-II computed through one N-point complex FFT
// (even samples forward, odd samples reversed), then takes
// X_k = Re(exp(-iπk/2N)·V_k).
template <class T>
class Dct2 {
 public:
  explicit Dct2(std::size_t n) : n_(n), plan_(n), buf_(n), spectrum_(n) {
    cos_.resize(n);
    sin_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double angle = std::numbers::pi * static_cast<double>(k) / (2.0 * static_cast<double>(n));
      cos_[k] = ScalarTraits<T>::from(std::cos(angle));
      sin_[k] = ScalarTraits<T>::from(std::sin(angle));
    }
  }

  // Unnormalized DCT-II of x, evaluated at the requested outputs only.
  void run(const std::vector<T>& x, std::span<const std::size_t> outputs, std::vector<T>& result) {
    const std::size_t half = (n_ + 1) / 2;
    for (std::size_t k = 0; k < half; ++k) buf_[k] = {x[2 * k], T(0)};
    for (std::size_t k = 0; 2 * k + 1 < n_; ++k) buf_[n_ - 1 - k] = {x[2 * k + 1], T(0)};
    plan_.forward(buf_.data(), spectrum_.data());
    result.resize(outputs.size());
    for (std::size_t i = 0; i < outputs.size(); ++i) {
      const std::size_t k = outputs[i];
      result[i] = cos_[k] * spectrum_[k].re + sin_[k] * spectrum_[k].im;
    }
  }

 private:
  std::size_t n_;
  detail::FftPlan<T> plan_;
  std::vector<detail::Complex<T>> buf_;
  std::vector<detail::Complex<T>> spectrum_;
  std::vector<T> cos_;
  std::vector<T> sin_;
};

template <class T>
void walsh_hadamard(std::vector<T>& x) {
  const std::size_t n = x.size();
  for (std::size_t h = 1; h < n; h *= 2) {
    for (std::size_t i = 0; i < n; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const T a = x[j];
        const T b = x[j + h];
        x[j] = a + b;
        x[j + h] = a - b;
      }
    }
  }
}

template <class T>
Matrix sketch_in(const SketchOperator& op, const Matrix& a) {
  const std::size_t N = op.padded_rows;
  const std::size_t n = a.cols();
  Matrix out(op.d, n, ScalarTraits<T>::precision);
  const double sample_scale = std::sqrt(static_cast<double>(N) / static_cast<double>(op.d));

  std::vector<T> column(N);
  std::vector<T> sampled;
  if (op.transform == Transform::Dct2) {
    Dct2<T> dct(N);
    // Orthonormal DCT-II weights folded together with √(N/d).
    std::vector<T> weight(op.d);
    for (std::size_t i = 0; i < op.d; ++i) {
      const double w = op.sampled_rows[i] == 0 ? std::sqrt(1.0 / static_cast<double>(N))
                                               : std::sqrt(2.0 / static_cast<double>(N));
      weight[i] = ScalarTraits<T>::from(w * sample_scale);
    }
    for (std::size_t j = 0; j < n; ++j) {
      auto aj = a.col(j);
      for (std::size_t i = 0; i < N; ++i) {
        const T v = ScalarTraits<T>::from(aj[i]);
        column[i] = op.signs[i] > 0 ? v : -v;
      }
      dct.run(column, op.sampled_rows, sampled);
      auto oj = out.col(j);
      for (std::size_t i = 0; i < op.d; ++i) oj[i] = ScalarTraits<T>::to_double(sampled[i] * weight[i]);
    }
  } else {
    const T weight = ScalarTraits<T>::from(1.0 / std::sqrt(static_cast<double>(op.d)));
    for (std::size_t j = 0; j < n; ++j) {
      auto aj = a.col(j);
      for (std::size_t i = 0; i < N; ++i) {
        const T v = i < op.m ? ScalarTraits<T>::from(aj[i]) : T(0);
        column[i] = op.signs[i] > 0 ? v : -v;
      }
      walsh_hadamard(column);
      auto oj = out.col(j);
      for (std::size_t i = 0; i < op.d; ++i) {
        oj[i] = ScalarTraits<T>::to_double(column[op.sampled_rows[i]] * weight);
      }
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(Transform t) noexcept {
  return t == Transform::Dct2 ? "dct2" : "wht";
}

std::optional<Transform> parse_transform(std::string_view name) noexcept {
  if (name == "dct2" || name == "dct") return Transform::Dct2;
  if (name == "wht" || name == "hadamard") return Transform::Wht;
  return std::nullopt;
}

SketchOperator make_sketch(std::size_t m, std::size_t d, Transform transform, std::uint64_t seed) {
  if (m < 1 || d < 1) fail(ErrorKind::InvalidArgument, "make_sketch requires m >= 1 and d >= 1");
  SketchOperator op;
  op.m = m;
  op.d = d;
  op.transform = transform;
  op.seed = seed;
  op.padded_rows = transform == Transform::Wht ? std::bit_ceil(m) : m;

  rng::CounterStream signs(rng::derive(seed, {kSignStream}));
  op.signs.resize(op.padded_rows);
  for (std::size_t i = 0; i < op.padded_rows; ++i) op.signs[i] = (signs.at(i) >> 63) ? -1 : 1;

  rng::CounterStream samples(rng::derive(seed, {kSampleStream}));
  op.sampled_rows.resize(d);
  for (std::size_t i = 0; i < d; ++i) op.sampled_rows[i] = samples.below(op.padded_rows);
  return op;
}

Matrix apply_sketch(const SketchOperator& op, const Matrix& a, Precision arithmetic) {
  if (a.rows() != op.m) {
    fail(ErrorKind::DimensionMismatch, "sketch expects " + std::to_string(op.m) + " rows, got " +
                                           std::to_string(a.rows()));
  }
  switch (arithmetic) {
    case Precision::Half: return sketch_in<Half>(op, a);
    case Precision::Single: return sketch_in<float>(op, a);
    case Precision::Double: break;
  }
  return sketch_in<double>(op, a);
}

Vector orthogonal_transform(Transform t, std::span<const double> x) {
  SketchOperator op;
  op.m = x.size();
  op.transform = t;
  op.padded_rows = t == Transform::Wht ? std::bit_ceil(x.size()) : x.size();
  op.d = op.padded_rows;
  op.signs.assign(op.padded_rows, 1);
  op.sampled_rows.resize(op.d);
  for (std::size_t i = 0; i < op.d; ++i) op.sampled_rows[i] = i;
  Matrix out = apply_sketch(op, Matrix::column_vector(x));
  return out.values();
}

std::uint64_t sample_size_lower_bound(const EmbeddingParams& p) {
  const auto bad = [](const char* what) { fail(ErrorKind::InvalidArgument, what); };
  if (p.n < 1 || p.m < p.n) bad("embedding params need 1 <= n <= m");
  if (!(p.epsilon > 0.0 && p.epsilon < 1.0)) bad("epsilon must lie in (0, 1)");
  if (!(p.delta > 0.0 && p.delta < 1.0)) bad("delta must lie in (0, 1)");
  if (!(p.coherence_mu > 0.0 && p.coherence_mu <= 1.0)) bad("coherence must lie in (0, 1]");
  const double floor_mu = static_cast<double>(p.n) / static_cast<double>(p.m);
  if (p.coherence_mu < floor_mu * (1.0 - 1e-12)) bad("coherence is below n/m");
  const double log_term = std::log(static_cast<double>(p.n) / p.delta);
  if (!(log_term > 0.0)) bad("ln(n/delta) must be positive");
  const double d = 2.0 * static_cast<double>(p.m) * p.coherence_mu * (1.0 + p.epsilon / 3.0) *
                   log_term / (p.epsilon * p.epsilon);
  return static_cast<std::uint64_t>(std::ceil(d));
}

double coherence(const Matrix& q) {
  const Matrix g = gram(q);
  double off = 0.0;
  for (std::size_t j = 0; j < g.cols(); ++j)
    for (std::size_t i = 0; i < g.rows(); ++i) {
      const double e = g(i, j) - (i == j ? 1.0 : 0.0);
      off += e * e;
    }
  if (std::sqrt(off) > 1e-10) fail(ErrorKind::NotOrthonormal, "columns are not orthonormal");
  double best = 0.0;
  for (std::size_t i = 0; i < q.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < q.cols(); ++j) s += q(i, j) * q(i, j);
    best = std::max(best, s);
  }
  return best;
}

}  // namespace sketchls
