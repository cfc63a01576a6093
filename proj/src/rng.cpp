#include "sketchls/rng.hpp"

#include <cmath>
#include <numbers>

namespace sketchls::rng {

double CounterStream::uniform() noexcept {
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1p-53;
}

std::uint64_t CounterStream::below(std::uint64_t bound) noexcept {
  const unsigned __int128 wide = static_cast<unsigned __int128>(next_u64()) * bound;
  return static_cast<std::uint64_t>(wide >> 64);
}

double CounterStream::normal() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

}  // namespace sketchls::rng
