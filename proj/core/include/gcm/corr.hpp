#pragma once

#include "gcm/dataset.hpp"
#include "gcm/matrix.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace gcm {

/// Pearson correlation matrix: exactly symmetric, exactly unit diagonal,
/// off-diagonal entries in [-1, 1].
class CorrMatrix {
public:
    CorrMatrix() = default;

    /// Validates the invariants above; throws Error(InvalidArgument).
    explicit CorrMatrix(Matrix entries);

    static CorrMatrix identity(std::size_t n) { return CorrMatrix(Matrix::identity(n)); }

    [[nodiscard]] std::size_t dim() const noexcept { return entries_.rows(); }
    double operator()(std::size_t i, std::size_t j) const noexcept { return entries_(i, j); }
    [[nodiscard]] const Matrix& matrix() const noexcept { return entries_; }

    /// Correlation matrix of the listed features, in the listed order.
    [[nodiscard]] CorrMatrix submatrix(std::span<const std::size_t> indices) const;

    friend bool operator==(const CorrMatrix&, const CorrMatrix&) = default;

private:
    Matrix entries_;
};

/// Pearson's rho via two-pass centered sums, clamped to [-1, 1].
double pearson(std::span<const double> x, std::span<const double> y);

CorrMatrix correlation_matrix(const Dataset& d);

}  // namespace gcm
