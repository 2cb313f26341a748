#include "drpso/error.hpp"

namespace drpso {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidProfile: return "InvalidProfile";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::NonHourlyCadence: return "NonHourlyCadence";
    case ErrorCode::UnparseableRow: return "UnparseableRow";
    case ErrorCode::DegenerateFeature: return "DegenerateFeature";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::InvalidArchitecture: return "InvalidArchitecture";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyTrainingSet: return "EmptyTrainingSet";
    case ErrorCode::DivergedTraining: return "DivergedTraining";
    case ErrorCode::InsufficientHistory: return "InsufficientHistory";
    case ErrorCode::ZeroVariance: return "ZeroVariance";
    case ErrorCode::ModelFormat: return "ModelFormat";
    case ErrorCode::ZeroPredictedTotal: return "ZeroPredictedTotal";
    case ErrorCode::InvalidBounds: return "InvalidBounds";
    case ErrorCode::NonDistinctParents: return "NonDistinctParents";
    case ErrorCode::GridTooLarge: return "GridTooLarge";
    case ErrorCode::ZeroBaseline: return "ZeroBaseline";
    case ErrorCode::MissingPrices: return "MissingPrices";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace drpso
