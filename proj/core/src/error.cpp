#include "mare/error.hpp"

namespace mare {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::BadDimensions: return "BadDimensions";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::ReorderFailure: return "ReorderFailure";
    case ErrorCode::NearSingularOperator: return "NearSingularOperator";
    case ErrorCode::NullSpaceDimension: return "NullSpaceDimension";
    case ErrorCode::SignFailure: return "SignFailure";
    case ErrorCode::NotZ: return "NotZ";
    case ErrorCode::NotMMatrix: return "NotMMatrix";
    case ErrorCode::NotRegular: return "NotRegular";
    case ErrorCode::IllDefined: return "IllDefined";
    case ErrorCode::MaxIterExceeded: return "MaxIterExceeded";
    case ErrorCode::SplitsConjugatePair: return "SplitsConjugatePair";
    case ErrorCode::SingularY1: return "SingularY1";
    case ErrorCode::SingularBlock: return "SingularBlock";
    case ErrorCode::NearSingularIGH: return "NearSingularIGH";
    case ErrorCode::DegenerateNullSpace: return "DegenerateNullSpace";
    case ErrorCode::GenerationFailure: return "GenerationFailure";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace mare
