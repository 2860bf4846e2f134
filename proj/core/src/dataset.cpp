#include "gcm/dataset.hpp"

#include "gcm/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace gcm {

Dataset::Dataset(std::vector<std::string> names, Matrix values)
    : names_(std::move(names)), values_(std::move(values)) {
    if (names_.size() != values_.cols()) {
        throw Error(ErrorCode::InvalidArgument,
                    "dataset has " + std::to_string(names_.size()) + " names for " +
                        std::to_string(values_.cols()) + " columns");
    }
    std::unordered_set<std::string> seen;
    for (const auto& name : names_) {
        if (name.empty()) throw Error(ErrorCode::InvalidArgument, "empty column name");
        if (!seen.insert(name).second) {
            throw Error(ErrorCode::DuplicateColumnName, "duplicate column name '" + name + "'");
        }
    }
    for (double v : values_.data()) {
        if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite dataset entry");
    }
}

std::optional<std::size_t> Dataset::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) return i;
    }
    return std::nullopt;
}

Dataset Dataset::select(const std::vector<std::size_t>& columns) const {
    std::vector<std::string> names;
    Matrix values(rows(), columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        const std::size_t src = columns[j];
        if (src >= cols()) throw Error(ErrorCode::InvalidArgument, "column index out of range");
        names.push_back(names_[src]);
        for (std::size_t r = 0; r < rows(); ++r) values(r, j) = values_(r, src);
    }
    return {std::move(names), std::move(values)};
}

namespace {

// Splits one CSV record. Double-quoted fields may contain the delimiter and
// "" escapes; records never span lines.
std::vector<std::string> split_record(std::string_view line, char delim, std::size_t row) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(ch);
            }
        } else if (ch == delim) {
            fields.push_back(std::move(cur));
            cur.clear();
            was_quoted = false;
        } else if (ch == '"' && cur.empty() && !was_quoted) {
            quoted = true;
            was_quoted = true;
        } else {
            cur.push_back(ch);
        }
    }
    if (quoted) throw ParseError(row, fields.size() + 1, "unterminated quote");
    fields.push_back(std::move(cur));
    return fields;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

double parse_cell(std::string_view cell, std::size_t row, std::size_t col) {
    std::string_view text = trim(cell);
    if (text.empty()) throw ParseError(row, col, "empty cell");
    if (text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParseError(row, col, "not a number: '" + std::string(cell) + "'");
    }
    if (!std::isfinite(value)) {
        throw ParseError(row, col, "non-finite value: '" + std::string(cell) + "'");
    }
    return value;
}

bool needs_quotes(std::string_view s, char delim) {
    return s.find_first_of(std::string{delim, '"', '\n', '\r'}) != std::string_view::npos;
}

}  // namespace

Dataset read_csv(std::istream& in, char delimiter) {
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(std::move(line));
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.empty()) throw ParseError(1, 1, "missing header row");

    std::vector<std::string> names = split_record(lines.front(), delimiter, 1);
    for (std::size_t c = 0; c < names.size(); ++c) {
        if (names[c].empty()) throw ParseError(1, c + 1, "empty column name");
    }
    const std::size_t n = names.size();
    const std::size_t m = lines.size() - 1;
    if (m < 2) {
        throw Error(ErrorCode::EmptyBody,
                    "need at least 2 data rows, found " + std::to_string(m));
    }

    Matrix values(m, n);
    for (std::size_t r = 0; r < m; ++r) {
        const std::size_t file_row = r + 2;
        const auto cells = split_record(lines[r + 1], delimiter, file_row);
        if (cells.size() != n) {
            throw ParseError(file_row, std::min(cells.size(), n) + 1,
                             "expected " + std::to_string(n) + " cells, found " +
                                 std::to_string(cells.size()));
        }
        for (std::size_t c = 0; c < n; ++c) values(r, c) = parse_cell(cells[c], file_row, c + 1);
    }
    return {std::move(names), std::move(values)};
}

Dataset load_csv(const std::filesystem::path& path, char delimiter) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) {
        throw Error(ErrorCode::MissingFile, "no such file: " + path.string());
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    return read_csv(in, delimiter);
}

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return {buf, ptr};
}

void write_csv(std::ostream& out, const Dataset& d, char delimiter) {
    const auto& names = d.names();
    for (std::size_t c = 0; c < names.size(); ++c) {
        if (c) out << delimiter;
        if (needs_quotes(names[c], delimiter)) {
            out << '"';
            for (char ch : names[c]) {
                if (ch == '"') out << '"';
                out << ch;
            }
            out << '"';
        } else {
            out << names[c];
        }
    }
    out << '\n';
    std::string line;
    for (std::size_t r = 0; r < d.rows(); ++r) {
        line.clear();
        const auto row = d.values().row(r);
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) line.push_back(delimiter);
            line += format_double(row[c]);
        }
        line.push_back('\n');
        out << line;
    }
}

void write_csv(const Dataset& d, const std::filesystem::path& path, char delimiter) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    write_csv(out, d, delimiter);
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "write failed: " + path.string());
}

ColumnStats column_stats(const Dataset& d) {
    const std::size_t m = d.rows();
    const std::size_t n = d.cols();
    if (m < 2) throw Error(ErrorCode::EmptyBody, "statistics need at least 2 rows");

    ColumnStats stats{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
    const Matrix& v = d.values();
    for (std::size_t r = 0; r < m; ++r) {
        const auto row = v.row(r);
        for (std::size_t c = 0; c < n; ++c) stats.means[c] += row[c];
    }
    for (double& mu : stats.means) mu /= static_cast<double>(m);
    for (std::size_t r = 0; r < m; ++r) {
        const auto row = v.row(r);
        for (std::size_t c = 0; c < n; ++c) {
            const double dev = row[c] - stats.means[c];
            stats.stds[c] += dev * dev;
        }
    }
    for (std::size_t c = 0; c < n; ++c) {
        stats.stds[c] = std::sqrt(stats.stds[c] / static_cast<double>(m - 1));
        if (stats.stds[c] < kZeroVarianceRelTol * (1.0 + std::abs(stats.means[c]))) {
            throw ZeroVarianceError(d.names()[c]);
        }
    }
    return stats;
}

Dataset znormalize(const Dataset& d) {
    const ColumnStats stats = column_stats(d);
    Matrix out = d.values();
    for (std::size_t r = 0; r < out.rows(); ++r) {
        auto row = out.row(r);
        for (std::size_t c = 0; c < row.size(); ++c) {
            row[c] = (row[c] - stats.means[c]) / stats.stds[c];
        }
    }
    return {d.names(), std::move(out)};
}

}  // namespace gcm
