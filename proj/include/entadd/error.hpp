#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace entadd {

enum class ErrorKind {
  NonInvertibleDivisor,
  MixedGroup,
  UnsupportedOperation,
  DuplicateName,
  UnknownCoordinate,
  OverlappingCoordinateSets,
  NonAdditiveVariant,
  CrossCheckMismatch,
  SupportOverflow,
  SupportTooLarge,
  InvalidDistribution,
  ParseError,
  SyntaxError,
  UnknownFunctional,
  UnboundVariable,
  DomainMismatch,
  NoClosedForm,
  DegenerateSample,
  DivisionHazard,
  EvaluationFailure,
  GenericityCheckFailed,
  ConstructionCheckFailed,
  InvalidArgument,
  UnknownRecord,
};

const char* to_string(ErrorKind kind) noexcept;

// All library failures are reported through this type; `kind()` is the
// machine-readable part, `what()` carries the diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& message);

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace entadd
