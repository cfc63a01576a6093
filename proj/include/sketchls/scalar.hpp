#pragma once

#include <cmath>
#include <compare>
#include <limits>

#include "sketchls/matrix.hpp"

namespace sketchls {

// Round-to-nearest-even into IEEE binary16. Values at or beyond the overflow
// threshold (65520) become signed infinity; subnormals are kept.
double round_to_half(double x) noexcept;
// Round-to-nearest-even into IEEE binary32, with the same overflow rule.
double round_to_single(double x) noexcept;
double round_to(double x, Precision p) noexcept;

// IEEE unit roundoff for round-to-nearest: 2^-11, 2^-24, 2^-53.
double unit_roundoff(Precision p) noexcept;
// Largest finite value of the format.
double max_finite(Precision p) noexcept;

// Software binary16 scalar. Every arithmetic result is computed in binary64
// and rounded once to binary16; because 53 >= 2*11 + 2 the double rounding is
// innocuous and each operation is correctly rounded.
class Half {
 public:
  Half() = default;
  explicit Half(double v) noexcept : v_(round_to_half(v)) {}

  explicit operator double() const noexcept { return v_; }
  double value() const noexcept { return v_; }

  friend Half operator+(Half a, Half b) noexcept { return Half(a.v_ + b.v_); }
  friend Half operator-(Half a, Half b) noexcept { return Half(a.v_ - b.v_); }
  friend Half operator*(Half a, Half b) noexcept { return Half(a.v_ * b.v_); }
  friend Half operator/(Half a, Half b) noexcept { return Half(a.v_ / b.v_); }
  friend Half operator-(Half a) noexcept { return exact(-a.v_); }

  Half& operator+=(Half o) noexcept { return *this = *this + o; }
  Half& operator-=(Half o) noexcept { return *this = *this - o; }
  Half& operator*=(Half o) noexcept { return *this = *this * o; }
  Half& operator/=(Half o) noexcept { return *this = *this / o; }

  friend bool operator==(Half a, Half b) noexcept { return a.v_ == b.v_; }
  friend std::partial_ordering operator<=>(Half a, Half b) noexcept { return a.v_ <=> b.v_; }

  friend Half sqrt(Half a) noexcept { return Half(std::sqrt(a.v_)); }
  friend Half abs(Half a) noexcept { return exact(std::fabs(a.v_)); }
  friend bool isfinite(Half a) noexcept { return std::isfinite(a.v_); }

 private:
  static Half exact(double v) noexcept {
    Half h;
    h.v_ = v;
    return h;
  }
  double v_ = 0.0;
};

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr Precision precision = Precision::Double;
  static double from(double v) noexcept { return v; }
  static double to_double(double v) noexcept { return v; }
};

template <>
struct ScalarTraits<float> {
  static constexpr Precision precision = Precision::Single;
  static float from(double v) noexcept { return static_cast<float>(round_to_single(v)); }
  static double to_double(float v) noexcept { return static_cast<double>(v); }
};

template <>
struct ScalarTraits<Half> {
  static constexpr Precision precision = Precision::Half;
  static Half from(double v) noexcept { return Half(v); }
  static double to_double(Half v) noexcept { return v.value(); }
};

}  // namespace sketchls
