#include "semrel/error.hpp"

namespace semrel {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::DimensionUndeterminable: return "DimensionUndeterminable";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::ZeroVariance: return "ZeroVariance";
    case ErrorCode::EmptyTable: return "EmptyTable";
    case ErrorCode::UnknownCharacter: return "UnknownCharacter";
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::NonConsecutivePositions: return "NonConsecutivePositions";
    case ErrorCode::BadNumeric: return "BadNumeric";
    case ErrorCode::NonPositive: return "NonPositive";
    case ErrorCode::TargetOOV: return "TargetOOV";
    case ErrorCode::BadWeights: return "BadWeights";
    case ErrorCode::DegenerateX: return "DegenerateX";
    case ErrorCode::KTooSmall: return "KTooSmall";
    case ErrorCode::SingleLevel: return "SingleLevel";
    case ErrorCode::Singularity: return "Singularity";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NMismatch: return "NMismatch";
    case ErrorCode::UnknownTerm: return "UnknownTerm";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::TooFewRows: return "TooFewRows";
    case ErrorCode::MixedResponse: return "MixedResponse";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace semrel
