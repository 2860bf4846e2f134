#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gcm {

enum class ErrorCode {
    MissingFile,
    ParseError,
    DuplicateColumnName,
    EmptyBody,
    ZeroVarianceColumn,
    IoError,
    LengthMismatch,
    NotPositiveSemiDefinite,
    ConvergenceFailure,
    InvalidSubset,
    DegenerateNoise,
    ExactModeRankError,
    ColumnMismatch,
    InvalidOrder,
    InvalidArgument,
    FormatError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Base of every error thrown by the library. The code identifies the
/// failure class; what() carries a one-line human diagnostic.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// CSV body cell that could not be read as a finite number. Row and column
/// are 1-based and count the header as row 1, as a spreadsheet would.
class ParseError : public Error {
public:
    ParseError(std::size_t row, std::size_t col, const std::string& detail);

    [[nodiscard]] std::size_t row() const noexcept { return row_; }
    [[nodiscard]] std::size_t col() const noexcept { return col_; }

private:
    std::size_t row_;
    std::size_t col_;
};

class ZeroVarianceError : public Error {
public:
    explicit ZeroVarianceError(std::string column);

    [[nodiscard]] const std::string& column() const noexcept { return column_; }

private:
    std::string column_;
};

}  // namespace gcm
