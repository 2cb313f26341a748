#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace drpso {

enum class ErrorCode {
  InvalidProfile,
  InvalidConfig,
  IoError,
  MissingColumn,
  NonHourlyCadence,
  UnparseableRow,
  DegenerateFeature,
  InsufficientData,
  InvalidArchitecture,
  DimensionMismatch,
  EmptyTrainingSet,
  DivergedTraining,
  InsufficientHistory,
  ZeroVariance,
  ModelFormat,
  ZeroPredictedTotal,
  InvalidBounds,
  NonDistinctParents,
  GridTooLarge,
  ZeroBaseline,
  MissingPrices,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI exit-code mapping) can branch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace drpso
