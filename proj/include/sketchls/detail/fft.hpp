#pragma once

// Mixed-radix complex FFT, generic over the scalar type so the sketch can be
// applied in emulated binary16 or native binary32/binary64 arithmetic.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "sketchls/scalar.hpp"

namespace sketchls::detail {

template <class T>
struct Complex {
  T re{};
  T im{};
};

template <class T>
inline Complex<T> operator+(Complex<T> a, Complex<T> b) {
  return {a.re + b.re, a.im + b.im};
}
template <class T>
inline Complex<T> operator-(Complex<T> a, Complex<T> b) {
  return {a.re - b.re, a.im - b.im};
}
template <class T>
inline Complex<T> operator*(Complex<T> a, Complex<T> b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

// Forward DFT X_k = Σ x_j exp(-2πi jk/n). Lengths are factored into primes;
// a prime factor p costs O(p) per output, so large primes degrade to O(n²).
template <class T>
class FftPlan {
 public:
  explicit FftPlan(std::size_t n) : n_(n) {
    std::size_t rest = n;
    for (std::size_t p = 2; p * p <= rest; ++p) {
      while (rest % p == 0) {
        factors_.push_back(p);
        rest /= p;
      }
    }
    if (rest > 1) factors_.push_back(rest);
    twiddle_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
      twiddle_[k] = {ScalarTraits<T>::from(std::cos(angle)), ScalarTraits<T>::from(std::sin(angle))};
    }
    for (std::size_t p : factors_) max_factor_ = p > max_factor_ ? p : max_factor_;
  }

  std::size_t size() const noexcept { return n_; }

  void forward(const Complex<T>* in, Complex<T>* out) const {
    std::vector<Complex<T>> scratch(max_factor_);
    recurse(in, out, n_, 1, 0, scratch.data());
  }

 private:
  void recurse(const Complex<T>* in, Complex<T>* out, std::size_t len, std::size_t stride,
               std::size_t level, Complex<T>* scratch) const {
    if (len == 1) {
      out[0] = in[0];
      return;
    }
    const std::size_t p = factors_[level];
    const std::size_t q = len / p;
    for (std::size_t r = 0; r < p; ++r) {
      recurse(in + r * stride, out + r * q, q, stride * p, level + 1, scratch);
    }
    const std::size_t step = n_ / len;
    if (p == 2) {
      for (std::size_t k = 0; k < q; ++k) {
        const Complex<T> a = out[k];
        const Complex<T> b = out[k + q] * twiddle_[k * step];
        out[k] = a + b;
        out[k + q] = a - b;
      }
      return;
    }
    for (std::size_t k = 0; k < q; ++k) {
      for (std::size_t r = 0; r < p; ++r) scratch[r] = out[r * q + k];
      for (std::size_t s = 0; s < p; ++s) {
        const std::size_t idx = k + q * s;
        Complex<T> acc = scratch[0];
        for (std::size_t r = 1; r < p; ++r) {
          acc = acc + scratch[r] * twiddle_[((r * idx) % len) * step];
        }
        out[idx] = acc;
      }
    }
  }

  std::size_t n_;
  std::size_t max_factor_ = 1;
  std::vector<std::size_t> factors_;
  std::vector<Complex<T>> twiddle_;
};

}  // namespace sketchls::detail
