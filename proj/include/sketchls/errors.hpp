#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sketchls {

enum class ErrorKind {
  InvalidArgument,
  DimensionMismatch,
  RankDeficient,
  SingularTriangular,
  NumericallySingular,
  NotPositiveDefinite,
  NoConvergence,
  NotOrthonormal,
  Overflow,
  PoleAtOne,
  MissingField,
  DegenerateResidual,
  ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries a kind so callers can branch
// on it (e.g. escalate precision on RankDeficient).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace sketchls
