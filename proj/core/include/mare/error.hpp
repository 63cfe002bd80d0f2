#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mare {

enum class ErrorCode {
  InvalidArgument,
  BadDimensions,
  ShapeMismatch,
  NonFinite,
  SingularMatrix,
  NoConvergence,
  ReorderFailure,
  NearSingularOperator,
  NullSpaceDimension,
  SignFailure,
  NotZ,
  NotMMatrix,
  NotRegular,
  IllDefined,
  MaxIterExceeded,
  SplitsConjugatePair,
  SingularY1,
  SingularBlock,
  NearSingularIGH,
  DegenerateNullSpace,
  GenerationFailure,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception type carried by every failure in the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mare
