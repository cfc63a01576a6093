#include "sketchls/scalar.hpp"

#include <algorithm>

namespace sketchls {

double round_to_half(double x) noexcept {
  if (!std::isfinite(x) || x == 0.0) return x;
  const double ax = std::fabs(x);
  // Halfway between 65504 and 2^16 rounds to even, i.e. up, i.e. overflow.
  if (ax >= 65520.0) return std::copysign(std::numeric_limits<double>::infinity(), x);
  int e = 0;
  std::frexp(ax, &e);
  // 11 significant bits; subnormal spacing is 2^-24.
  const int quantum = std::max(e - 11, -24);
  const double r = std::nearbyint(std::ldexp(x, -quantum));
  return std::ldexp(r, quantum);
}

double round_to_single(double x) noexcept {
  if (!std::isfinite(x)) return x;
  // FLT_MAX + half an ulp: the first value that rounds to infinity.
  constexpr double overflow_threshold = 0x1.ffffffp127;
  if (std::fabs(x) >= overflow_threshold) {
    return std::copysign(std::numeric_limits<double>::infinity(), x);
  }
  return static_cast<double>(static_cast<float>(x));
}

double round_to(double x, Precision p) noexcept {
  switch (p) {
    case Precision::Half: return round_to_half(x);
    case Precision::Single: return round_to_single(x);
    case Precision::Double: return x;
  }
  return x;
}

double unit_roundoff(Precision p) noexcept {
  switch (p) {
    case Precision::Half: return 0x1p-11;
    case Precision::Single: return 0x1p-24;
    case Precision::Double: return 0x1p-53;
  }
  return 0x1p-53;
}

double max_finite(Precision p) noexcept {
  switch (p) {
    case Precision::Half: return 65504.0;
    case Precision::Single: return static_cast<double>(std::numeric_limits<float>::max());
    case Precision::Double: return std::numeric_limits<double>::max();
  }
  return std::numeric_limits<double>::max();
}

}  // namespace sketchls
