#include "entadd/error.hpp"

namespace entadd {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonInvertibleDivisor: return "NonInvertibleDivisor";
    case ErrorKind::MixedGroup: return "MixedGroup";
    case ErrorKind::UnsupportedOperation: return "UnsupportedOperation";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::UnknownCoordinate: return "UnknownCoordinate";
    case ErrorKind::OverlappingCoordinateSets: return "OverlappingCoordinateSets";
    case ErrorKind::NonAdditiveVariant: return "NonAdditiveVariant";
    case ErrorKind::CrossCheckMismatch: return "CrossCheckMismatch";
    case ErrorKind::SupportOverflow: return "SupportOverflow";
    case ErrorKind::SupportTooLarge: return "SupportTooLarge";
    case ErrorKind::InvalidDistribution: return "InvalidDistribution";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownFunctional: return "UnknownFunctional";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::NoClosedForm: return "NoClosedForm";
    case ErrorKind::DegenerateSample: return "DegenerateSample";
    case ErrorKind::DivisionHazard: return "DivisionHazard";
    case ErrorKind::EvaluationFailure: return "EvaluationFailure";
    case ErrorKind::GenericityCheckFailed: return "GenericityCheckFailed";
    case ErrorKind::ConstructionCheckFailed: return "ConstructionCheckFailed";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::UnknownRecord: return "UnknownRecord";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

SyntaxError::SyntaxError(std::size_t offset, const std::string& message)
    : Error(ErrorKind::SyntaxError, message + " at offset " + std::to_string(offset)),
      offset_(offset) {}

}  // namespace entadd
