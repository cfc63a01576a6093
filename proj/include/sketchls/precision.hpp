#pragma once

#include <optional>
#include <string_view>

#include "sketchls/dense.hpp"
#include "sketchls/matrix.hpp"

namespace sketchls {

struct PrecisionLevel {
  Precision kind = Precision::Double;
  double unit_roundoff = 0x1p-53;
};

PrecisionLevel level(Precision p) noexcept;

// Unit roundoffs plugged into the perturbation bounds: 2^-11, 2^-23, 2^-52.
// These are one bit coarser than the IEEE unit roundoffs for single and
// double; the bounds are evaluated with these constants.
double bound_unit_roundoff(Precision p) noexcept;

// Preconditioner precision as named on the command line.
enum class PrecisionChoice { Auto, Half, Single, Double };
std::string_view to_string(PrecisionChoice c) noexcept;
std::optional<PrecisionChoice> parse_precision_choice(std::string_view name) noexcept;
std::optional<Precision> parse_precision(std::string_view name) noexcept;

struct RoundedMatrix {
  Matrix matrix;
  bool overflowed = false;
};

// Entrywise round-to-nearest-even into p. Overflow becomes ±inf and is
// flagged, never thrown.
RoundedMatrix round_to_precision(const Matrix& a, Precision p);

// Householder QR with every flop rounded to p. Binary16 input is first scaled
// by a power of two so that max|entry| < 1; R is scaled back exactly.
QRFactors qr_in_precision(const Matrix& a, Precision p);
// Same, R only.
Matrix qr_r_in_precision(const Matrix& a, Precision p);

struct ConditionEstimate {
  double kappa0 = 0.0;     // ≈ log10 κ(A)
  bool overflowed = false;
};

struct PrecisionDecision {
  double kappa0 = 0.0;
  Precision selected = Precision::Double;
  bool overflowed = false;
};

// κ₀ = ½·log10(n·‖AᵀA‖₁·est‖(AᵀA)⁻¹‖₁), all in binary32. The inverse is
// applied through the binary32 R factor of A (RᵀR = AᵀA). Any breakdown or
// non-finite intermediate sets overflowed instead of throwing.
ConditionEstimate estimate_log10_condition(const Matrix& a);

// κ₀ < 4 → half; κ₀ ≤ 8 → single; larger, NaN or overflowed → double.
Precision select_precision(double kappa0, bool overflowed) noexcept;

PrecisionDecision decide_precision(const Matrix& a);

}  // namespace sketchls
