#include "miclab/error.hpp"

namespace miclab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::SingularOperator: return "SingularOperator";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotPsd: return "NotPsd";
    case ErrorCode::SumNotIdentity: return "SumNotIdentity";
    case ErrorCode::WrongCount: return "WrongCount";
    case ErrorCode::LinearlyDependent: return "LinearlyDependent";
    case ErrorCode::IllConditionedGram: return "IllConditionedGram";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::DegenerateFiducial: return "DegenerateFiducial";
    case ErrorCode::BetaOutOfRange: return "BetaOutOfRange";
    case ErrorCode::BetaZero: return "BetaZero";
    case ErrorCode::EvenDimension: return "EvenDimension";
    case ErrorCode::EnvelopeExceeded: return "EnvelopeExceeded";
    case ErrorCode::NotSic: return "NotSic";
    case ErrorCode::BiasedMic: return "BiasedMic";
    case ErrorCode::SingularConditionalMatrix: return "SingularConditionalMatrix";
    case ErrorCode::SamplingExhausted: return "SamplingExhausted";
    case ErrorCode::WrongDimension: return "WrongDimension";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace miclab
