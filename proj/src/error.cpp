#include "reprmetrics/error.hpp"

namespace reprmetrics {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::FileUnreadable: return "FileUnreadable";
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::WrongRank: return "WrongRank";
    case ErrorCode::MatrixTooLarge: return "MatrixTooLarge";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DuplicateEntry: return "DuplicateEntry";
    case ErrorCode::EmptyManifest: return "EmptyManifest";
    case ErrorCode::ZeroVectorAfterCentering: return "ZeroVectorAfterCentering";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::InternalConsistency: return "InternalConsistency";
    case ErrorCode::KOutOfRange: return "KOutOfRange";
    case ErrorCode::AllZeroSpectrum: return "AllZeroSpectrum";
    case ErrorCode::ConfigMismatch: return "ConfigMismatch";
    case ErrorCode::InvalidWeights: return "InvalidWeights";
    case ErrorCode::ManifestMismatch: return "ManifestMismatch";
    case ErrorCode::AllSequencesSkipped: return "AllSequencesSkipped";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

NonFiniteError::NonFiniteError(std::size_t row, std::size_t col, const std::string& where)
    : Error(ErrorCode::NonFinite, "non-finite value at row " + std::to_string(row) + ", col " +
                                      std::to_string(col) + " in " + where),
      row_(row),
      col_(col) {}

ZeroVectorError::ZeroVectorError(std::size_t row, const std::string& label)
    : Error(ErrorCode::ZeroVectorAfterCentering,
            "row " + std::to_string(row) + " of '" + label + "' has zero norm after centering"),
      row_(row) {}

}  // namespace reprmetrics
