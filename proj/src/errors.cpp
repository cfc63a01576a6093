#include "sketchls/errors.hpp"

namespace sketchls {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::SingularTriangular: return "SingularTriangular";
    case ErrorKind::NumericallySingular: return "NumericallySingular";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NotOrthonormal: return "NotOrthonormal";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::PoleAtOne: return "PoleAtOne";
    case ErrorKind::MissingField: return "MissingField";
    case ErrorKind::DegenerateResidual: return "DegenerateResidual";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace sketchls
