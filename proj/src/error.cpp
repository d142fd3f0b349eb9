#include "toplat/error.hpp"

namespace toplat {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::MaskOutOfRange: return "MaskOutOfRange";
    case ErrorKind::NotClosedUnderUnion: return "NotClosedUnderUnion";
    case ErrorKind::NotClosedUnderIntersection: return "NotClosedUnderIntersection";
    case ErrorKind::MissingEmptyOrFull: return "MissingEmptyOrFull";
    case ErrorKind::GroundMismatch: return "GroundMismatch";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::ImproperSubset: return "ImproperSubset";
    case ErrorKind::NotAnAtom: return "NotAnAtom";
    case ErrorKind::NotAPartialOrder: return "NotAPartialOrder";
    case ErrorKind::MeetJoinMissing: return "MeetJoinMissing";
    case ErrorKind::EqualAtoms: return "EqualAtoms";
    case ErrorKind::ClassificationFailed: return "ClassificationFailed";
    case ErrorKind::SizeExceeded: return "SizeExceeded";
    case ErrorKind::NotALatticeIso: return "NotALatticeIso";
    case ErrorKind::NoConsistentBijection: return "NoConsistentBijection";
    case ErrorKind::UnsupportedField: return "UnsupportedField";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotASubspace: return "NotASubspace";
    case ErrorKind::NotSemiaffine: return "NotSemiaffine";
    case ErrorKind::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorKind::NotInducible: return "NotInducible";
    case ErrorKind::HausdorffNotPreserved: return "HausdorffNotPreserved";
    case ErrorKind::GradeViolation: return "GradeViolation";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

bool is_violation(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NoConsistentBijection:
    case ErrorKind::ClassificationFailed:
    case ErrorKind::NotSemiaffine:
    case ErrorKind::NotInducible:
    case ErrorKind::GradeViolation:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace toplat
