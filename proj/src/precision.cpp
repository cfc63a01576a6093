#include "sketchls/precision.hpp"

#include <cmath>

#include "sketchls/detail/householder.hpp"
#include "sketchls/errors.hpp"
#include "sketchls/scalar.hpp"

namespace sketchls {

namespace {

template <class T>
detail::HouseholderFactorization<T> factor_in(const Matrix& a) {
  return detail::householder_factor<T>(a.rows(), a.cols(), detail::convert_to<T>(a.data()));
}

void require_finite(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) fail(ErrorKind::Overflow, "non-finite entry in low-precision QR");
  }
}

// Power-of-two exponent e with max|a|·2^-e in [0.5, 1).
int scale_exponent(const Matrix& a) {
  const double m = max_abs(a);
  if (m == 0.0 || !std::isfinite(m)) return 0;
  int e = 0;
  std::frexp(m, &e);
  return e;
}

template <class T>
QRFactors qr_generic(const Matrix& a, bool want_q) {
  auto f = factor_in<T>(a);
  QRFactors out;
  auto r = detail::convert_from(detail::householder_extract_r(f));
  require_finite(r);
  out.r = Matrix(a.cols(), a.cols(), std::move(r), ScalarTraits<T>::precision);
  if (want_q) {
    auto q = detail::convert_from(detail::householder_form_q(f));
    require_finite(q);
    out.q = Matrix(a.rows(), a.cols(), std::move(q), ScalarTraits<T>::precision);
  }
  return out;
}

QRFactors qr_dispatch(const Matrix& a, Precision p, bool want_q) {
  switch (p) {
    case Precision::Double: {
      if (want_q) return householder_qr(a);
      return {Matrix{}, householder_r(a)};
    }
    case Precision::Single: return qr_generic<float>(a, want_q);
    case Precision::Half: {
      const int e = scale_exponent(a);
      QRFactors f = qr_generic<Half>(scaled(a, std::ldexp(1.0, -e)), want_q);
      for (double& v : f.r.data()) v = std::ldexp(v, e);
      return f;
    }
  }
  return householder_qr(a);
}

}  // namespace

PrecisionLevel level(Precision p) noexcept { return {p, unit_roundoff(p)}; }

double bound_unit_roundoff(Precision p) noexcept {
  switch (p) {
    case Precision::Half: return 0x1p-11;
    case Precision::Single: return 0x1p-23;
    case Precision::Double: return 0x1p-52;
  }
  return 0x1p-52;
}

std::string_view to_string(PrecisionChoice c) noexcept {
  switch (c) {
    case PrecisionChoice::Auto: return "auto";
    case PrecisionChoice::Half: return "half";
    case PrecisionChoice::Single: return "single";
    case PrecisionChoice::Double: return "double";
  }
  return "auto";
}

std::optional<PrecisionChoice> parse_precision_choice(std::string_view name) noexcept {
  if (name == "auto") return PrecisionChoice::Auto;
  if (name == "half") return PrecisionChoice::Half;
  if (name == "single") return PrecisionChoice::Single;
  if (name == "double") return PrecisionChoice::Double;
  return std::nullopt;
}

std::optional<Precision> parse_precision(std::string_view name) noexcept {
  if (name == "half") return Precision::Half;
  if (name == "single") return Precision::Single;
  if (name == "double") return Precision::Double;
  return std::nullopt;
}

RoundedMatrix round_to_precision(const Matrix& a, Precision p) {
  RoundedMatrix out{a, false};
  for (double& v : out.matrix.data()) {
    const bool was_finite = std::isfinite(v);
    v = round_to(v, p);
    if (was_finite && !std::isfinite(v)) out.overflowed = true;
  }
  out.matrix.set_storage(p);
  return out;
}

QRFactors qr_in_precision(const Matrix& a, Precision p) { return qr_dispatch(a, p, true); }

Matrix qr_r_in_precision(const Matrix& a, Precision p) { return qr_dispatch(a, p, false).r; }

ConditionEstimate estimate_log10_condition(const Matrix& a) {
  if (a.rows() < a.cols() || a.cols() == 0) {
    fail(ErrorKind::InvalidArgument, "estimate_log10_condition requires rows >= cols >= 1");
  }
  const std::size_t n = a.cols();
  ConditionEstimate out;
  const RoundedMatrix a32 = round_to_precision(a, Precision::Single);
  if (a32.overflowed) {
    out.overflowed = true;
    return out;
  }
  const auto values = detail::convert_to<float>(a32.matrix.data());
  const std::size_t m = a.rows();

  // ‖AᵀA‖₁ with the Gram matrix formed in binary32.
  float gram_one_norm = 0.0f;
  for (std::size_t j = 0; j < n; ++j) {
    float col_sum = 0.0f;
    for (std::size_t i = 0; i < n; ++i) {
      float s = 0.0f;
      for (std::size_t k = 0; k < m; ++k) s += values[i * m + k] * values[j * m + k];
      col_sum += std::fabs(s);
    }
    gram_one_norm = std::max(gram_one_norm, col_sum);
  }

  std::vector<float> r;
  try {
    r = detail::householder_extract_r(detail::householder_factor<float>(m, n, values));
  } catch (const Error&) {
    out.overflowed = true;
    return out;
  }
  // (AᵀA)⁻¹ = R⁻¹R⁻ᵀ is symmetric, so the adjoint solve is the same map.
  const InverseApply solve = [&](std::span<const double> rhs, bool) {
    std::vector<float> x = detail::convert_to<float>(rhs);
    detail::upper_triangular_solve(n, r.data(), x.data(), true);
    detail::upper_triangular_solve(n, r.data(), x.data(), false);
    return detail::convert_from(x);
  };
  double inverse_norm = 0.0;
  try {
    inverse_norm = hager_one_norm_inverse_estimate(solve, n);
  } catch (const Error&) {
    out.overflowed = true;
    return out;
  }
  const float bound = static_cast<float>(n) * gram_one_norm * static_cast<float>(round_to_single(inverse_norm));
  if (!std::isfinite(bound) || !std::isfinite(inverse_norm) || !(bound > 0.0f)) {
    out.overflowed = true;
    return out;
  }
  out.kappa0 = 0.5 * std::log10(static_cast<double>(bound));
  return out;
}

Precision select_precision(double kappa0, bool overflowed) noexcept {
  if (overflowed || std::isnan(kappa0)) return Precision::Double;
  if (kappa0 < 4.0) return Precision::Half;
  if (kappa0 <= 8.0) return Precision::Single;
  return Precision::Double;
}

PrecisionDecision decide_precision(const Matrix& a) {
  const ConditionEstimate est = estimate_log10_condition(a);
  return {est.kappa0, select_precision(est.kappa0, est.overflowed), est.overflowed};
}

}  // namespace sketchls
