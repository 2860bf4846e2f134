#include "gcm/error.hpp"

namespace gcm {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::MissingFile: return "MissingFile";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::DuplicateColumnName: return "DuplicateColumnName";
        case ErrorCode::EmptyBody: return "EmptyBody";
        case ErrorCode::ZeroVarianceColumn: return "ZeroVarianceColumn";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::NotPositiveSemiDefinite: return "NotPositiveSemiDefinite";
        case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
        case ErrorCode::InvalidSubset: return "InvalidSubset";
        case ErrorCode::DegenerateNoise: return "DegenerateNoise";
        case ErrorCode::ExactModeRankError: return "ExactModeRankError";
        case ErrorCode::ColumnMismatch: return "ColumnMismatch";
        case ErrorCode::InvalidOrder: return "InvalidOrder";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::FormatError: return "FormatError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

ParseError::ParseError(std::size_t row, std::size_t col, const std::string& detail)
    : Error(ErrorCode::ParseError,
            "row " + std::to_string(row) + ", column " + std::to_string(col) + ": " + detail),
      row_(row),
      col_(col) {}

ZeroVarianceError::ZeroVarianceError(std::string column)
    : Error(ErrorCode::ZeroVarianceColumn, "column '" + column + "' has zero variance"),
      column_(std::move(column)) {}

}  // namespace gcm
