#pragma once

#include "gcm/matrix.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gcm {

/// Column-named numeric table, m observations by n features. Every entry
/// is finite and column names are unique and nonempty.
class Dataset {
public:
    Dataset() = default;
    Dataset(std::vector<std::string> names, Matrix values);

    [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }
    [[nodiscard]] const Matrix& values() const noexcept { return values_; }
    [[nodiscard]] std::size_t rows() const noexcept { return values_.rows(); }
    [[nodiscard]] std::size_t cols() const noexcept { return values_.cols(); }

    [[nodiscard]] std::vector<double> column(std::size_t c) const { return values_.column(c); }
    [[nodiscard]] std::optional<std::size_t> index_of(std::string_view name) const;

    /// New dataset holding only the given columns, in the given order.
    [[nodiscard]] Dataset select(const std::vector<std::size_t>& columns) const;

    friend bool operator==(const Dataset&, const Dataset&) = default;

private:
    std::vector<std::string> names_;
    Matrix values_;
};

/// Per-feature mean and sample standard deviation (denominator m - 1).
struct ColumnStats {
    std::vector<double> means;
    std::vector<double> stds;
};

/// A column whose sample std falls below this fraction of (1 + |mean|) is
/// treated as constant.
inline constexpr double kZeroVarianceRelTol = 1e-12;

Dataset read_csv(std::istream& in, char delimiter = ',');
Dataset load_csv(const std::filesystem::path& path, char delimiter = ',');

void write_csv(std::ostream& out, const Dataset& d, char delimiter = ',');
void write_csv(const Dataset& d, const std::filesystem::path& path, char delimiter = ',');

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

ColumnStats column_stats(const Dataset& d);

/// Each column shifted to mean 0 and scaled to sample std 1.
Dataset znormalize(const Dataset& d);

}  // namespace gcm
