#pragma once

#include <cstdint>
#include <initializer_list>

namespace sketchls::rng {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// Derives an independent sub-seed from a seed and a list of stream tags.
constexpr std::uint64_t derive(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) noexcept {
  std::uint64_t h = mix64(seed + kGolden);
  for (std::uint64_t t : tags) h = mix64(h ^ mix64(t + kGolden));
  return h;
}

// Counter-based stream: draw i is mix64(seed + (i+1)·γ), so any draw can be
// recomputed from (seed, i) without replaying the stream.
class CounterStream {
 public:
  explicit CounterStream(std::uint64_t seed) noexcept : seed_(seed) {}

  std::uint64_t at(std::uint64_t index) const noexcept { return mix64(seed_ + (index + 1) * kGolden); }
  std::uint64_t next_u64() noexcept { return at(counter_++); }

  // Uniform on (0, 1].
  double uniform() noexcept;
  // Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) noexcept;
  // Standard normal via Box–Muller; pairs are cached.
  double normal() noexcept;

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace sketchls::rng
