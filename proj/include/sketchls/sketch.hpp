#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sketchls/matrix.hpp"

namespace sketchls {

enum class Transform { Dct2, Wht };

std::string_view to_string(Transform t) noexcept;
// Accepts "dct2" / "dct" and "wht" / "hadamard".
std::optional<Transform> parse_transform(std::string_view name) noexcept;

// Ω = √(N/d)·S·F·D. The signs and sample indices are regenerated from the
// seed; two operators built from the same (m, d, transform, seed) are equal.
struct SketchOperator {
  std::size_t m = 0;            // input rows
  std::size_t padded_rows = 0;  // N: m for DCT-II, next power of two for WHT
  std::size_t d = 0;            // sample count
  std::vector<std::int8_t> signs;          // length N, entries ±1
  std::vector<std::size_t> sampled_rows;   // length d, in [0, N), with replacement
  Transform transform = Transform::Dct2;
  std::uint64_t seed = 0;

  friend bool operator==(const SketchOperator&, const SketchOperator&) = default;
};

SketchOperator make_sketch(std::size_t m, std::size_t d, Transform transform, std::uint64_t seed);

// Ω·a with every arithmetic result rounded to `arithmetic`. The entries of a
// are rounded to that precision first (a no-op if they already are).
Matrix apply_sketch(const SketchOperator& op, const Matrix& a,
                    Precision arithmetic = Precision::Double);

// The full orthonormal transform F applied to x (zero-padded to N for WHT),
// without signs or sampling. Used to check orthogonality.
Vector orthogonal_transform(Transform t, std::span<const double> x);

struct EmbeddingParams {
  double coherence_mu = 1.0;
  double epsilon = 0.5;
  double delta = 0.01;
  std::size_t n = 1;
  std::size_t m = 1;
};

// ⌈2·m·μ·(1 + ε/3)·ln(n/δ) / ε²⌉: rows to sample uniformly for a subspace
// embedding with distortion ε and failure probability δ.
std::uint64_t sample_size_lower_bound(const EmbeddingParams& p);

// Largest squared row norm of a matrix with orthonormal columns.
double coherence(const Matrix& q);

}  // namespace sketchls
