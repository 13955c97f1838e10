#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace semrel {

enum class ErrorCode {
  // embedding_store
  EmptyInput,
  DimensionUndeterminable,
  ZeroVector,
  DimMismatch,
  ZeroVariance,
  // corpus_model
  EmptyTable,
  UnknownCharacter,
  MissingColumn,
  NonConsecutivePositions,
  BadNumeric,
  NonPositive,
  // relevance_engine
  TargetOOV,
  BadWeights,
  // gam_engine
  DegenerateX,
  KTooSmall,
  SingleLevel,
  Singularity,
  NonFinite,
  NMismatch,
  UnknownTerm,
  // analysis_pipeline
  InsufficientData,
  TooFewRows,
  MixedResponse,
  IoError,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above, so
/// callers can branch on the kind without parsing the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace semrel
