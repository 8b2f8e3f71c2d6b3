#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chevtwist {

// Stable error codes. The CLI maps them onto exit codes and JSON error objects,
// so never renumber or rename existing entries.
enum class ErrorCode {
  InvalidArgument,
  ParseError,
  DivisionByZero,
  FieldMismatch,
  ZeroArgument,
  ConstantFunction,
  PoleHit,
  FactorizationBound,
  UnsupportedType,
  ForeignRoot,
  BasisMismatch,
  ZeroParameter,
  ZeroCharacterValue,
  RelationViolation,
  SignObstruction,
  NoSolution,
  BudgetExceeded,
  NotEnumerated,
  AutomorphismEscapesGroup,
  InfiniteOrderFieldPart,
  FiniteFieldRejected,
  CertificateFailure,
  ConstancyViolation,
  NotDiagonal,
  NotRational,
  NotStable,
  NotCentral,
  LemmaViolation,
  ChecksumMismatch,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace chevtwist
