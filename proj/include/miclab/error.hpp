#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace miclab {

enum class ErrorCode {
  NotHermitian,
  ConvergenceFailure,
  SingularOperator,
  ShapeMismatch,
  NotPsd,
  SumNotIdentity,
  WrongCount,
  LinearlyDependent,
  IllConditionedGram,
  InvalidState,
  NotNormalized,
  DegenerateFiducial,
  BetaOutOfRange,
  BetaZero,
  EvenDimension,
  EnvelopeExceeded,
  NotSic,
  BiasedMic,
  SingularConditionalMatrix,
  SamplingExhausted,
  WrongDimension,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library. The code identifies the contract that
// was violated; the message carries the offending values.
class MicError : public std::runtime_error {
 public:
  MicError(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace miclab
