#pragma once

#include <stdexcept>
#include <string>

namespace toplat {

enum class ErrorKind {
  InvalidArgument,
  MaskOutOfRange,
  NotClosedUnderUnion,
  NotClosedUnderIntersection,
  MissingEmptyOrFull,
  GroundMismatch,
  BudgetExceeded,
  ImproperSubset,
  NotAnAtom,
  NotAPartialOrder,
  MeetJoinMissing,
  EqualAtoms,
  ClassificationFailed,
  SizeExceeded,
  NotALatticeIso,
  NoConsistentBijection,
  UnsupportedField,
  DivisionByZero,
  SingularMatrix,
  DimensionMismatch,
  NotASubspace,
  NotSemiaffine,
  DimensionTooSmall,
  NotInducible,
  HausdorffNotPreserved,
  GradeViolation,
  ParseError,
};

const char* to_string(ErrorKind kind);

/// Kinds raised when a checked theorem or integrity invariant fails on
/// well-formed input. Everything else is a usage or input problem.
bool is_violation(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace toplat
