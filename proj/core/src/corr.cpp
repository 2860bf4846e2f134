#include "gcm/corr.hpp"

#include "gcm/error.hpp"
#include "gcm/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gcm {

CorrMatrix::CorrMatrix(Matrix entries) : entries_(std::move(entries)) {
    const std::size_t n = entries_.rows();
    if (entries_.cols() != n) throw Error(ErrorCode::InvalidArgument, "correlation matrix must be square");
    for (std::size_t i = 0; i < n; ++i) {
        if (entries_(i, i) != 1.0) {
            throw Error(ErrorCode::InvalidArgument, "correlation matrix diagonal must be exactly 1");
        }
        for (std::size_t j = 0; j < i; ++j) {
            const double v = entries_(i, j);
            if (!(v >= -1.0 && v <= 1.0)) {
                throw Error(ErrorCode::InvalidArgument, "correlation entry outside [-1, 1]");
            }
            if (v != entries_(j, i)) {
                throw Error(ErrorCode::InvalidArgument, "correlation matrix must be symmetric");
            }
        }
    }
}

CorrMatrix CorrMatrix::submatrix(std::span<const std::size_t> indices) const {
    Matrix sub(indices.size(), indices.size());
    for (std::size_t a = 0; a < indices.size(); ++a) {
        for (std::size_t b = 0; b < indices.size(); ++b) sub(a, b) = entries_(indices[a], indices[b]);
    }
    CorrMatrix out;
    out.entries_ = std::move(sub);
    return out;
}

namespace {

struct Centered {
    std::vector<double> values;
    double ss = 0.0;  // centered sum of squares
};

Centered center(std::span<const double> x, const std::string& name) {
    const std::size_t m = x.size();
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(m);
    Centered out{std::vector<double>(m), 0.0};
    for (std::size_t i = 0; i < m; ++i) {
        out.values[i] = x[i] - mean;
        out.ss += out.values[i] * out.values[i];
    }
    if (std::sqrt(out.ss / static_cast<double>(m - 1)) < kZeroVarianceRelTol * (1.0 + std::abs(mean))) {
        throw ZeroVarianceError(name);
    }
    return out;
}

double correlate(const Centered& x, const Centered& y) {
    double dot = 0.0;
    for (std::size_t i = 0; i < x.values.size(); ++i) dot += x.values[i] * y.values[i];
    // sqrt(s * s) == s exactly, so identical columns give exactly 1. Fall
    // back to the product of roots if the product leaves double range.
    double denom = std::sqrt(x.ss * y.ss);
    if (!std::isnormal(denom)) denom = std::sqrt(x.ss) * std::sqrt(y.ss);
    return std::clamp(dot / denom, -1.0, 1.0);
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw Error(ErrorCode::LengthMismatch, "pearson: vectors differ in length");
    if (x.size() < 2) throw Error(ErrorCode::LengthMismatch, "pearson: need at least 2 observations");
    return correlate(center(x, "x"), center(y, "y"));
}

CorrMatrix correlation_matrix(const Dataset& d) {
    const std::size_t n = d.cols();
    if (d.rows() < 2) throw Error(ErrorCode::EmptyBody, "correlation needs at least 2 rows");

    std::vector<Centered> cols;
    cols.reserve(n);
    for (std::size_t c = 0; c < n; ++c) cols.push_back(center(d.column(c), d.names()[c]));

    Matrix entries = Matrix::identity(n);
    parallel_for(n, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j) entries(i, j) = correlate(cols[i], cols[j]);
    });
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) entries(j, i) = entries(i, j);
    return CorrMatrix(std::move(entries));
}

}  // namespace gcm
