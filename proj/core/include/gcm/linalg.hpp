#pragma once

#include "gcm/corr.hpp"
#include "gcm/matrix.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace gcm {

/// Diagonal jitter ladder tried when a correlation matrix is PSD but not
/// numerically PD: 0, then start, start*factor, ... up to max.
struct JitterPolicy {
    double start = 1e-10;
    double factor = 10.0;
    double max = 1e-6;

    [[nodiscard]] std::vector<double> ladder() const;
};

/// Lower-triangular L with positive diagonal; entries above the diagonal
/// are exactly zero.
class CholeskyFactor {
public:
    CholeskyFactor() = default;
    explicit CholeskyFactor(Matrix lower);

    [[nodiscard]] std::size_t dim() const noexcept { return lower_.rows(); }
    [[nodiscard]] const Matrix& lower() const noexcept { return lower_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return lower_(i, j); }

    /// L * L^T.
    [[nodiscard]] Matrix reconstruct() const;

    /// Scales every entry; the result factors s^2 * (L L^T).
    [[nodiscard]] CholeskyFactor scaled(double s) const;

private:
    Matrix lower_;
};

struct CholeskyResult {
    CholeskyFactor factor;
    double applied_jitter = 0.0;
};

/// Pivots at or below this (relative to the jittered diagonal) are failures.
inline constexpr double kPivotFloor = 1e-12;

/// Plain Cholesky of (a + jitter * I). Returns nullopt on a non-positive
/// pivot. Only the lower triangle of `a` is read.
std::optional<CholeskyFactor> try_cholesky(const Matrix& a, double jitter = 0.0);

/// Walks the jitter ladder until factorization succeeds. Throws
/// Error(NotPositiveSemiDefinite) if the largest jitter still fails.
CholeskyResult cholesky(const CorrMatrix& c, const JitterPolicy& policy = {});

/// Solves y L^T = x in place for every row x of `rows`, i.e. rows <- rows * L^{-T}.
void solve_rows_lower_transpose(Matrix& rows, const CholeskyFactor& factor);

struct EigenResult {
    double lambda_min = 0.0;
    std::vector<double> eigvec_min;
};

/// Smallest eigenpair of a symmetric matrix by cyclic Jacobi rotations.
/// Throws Error(ConvergenceFailure) after 100 n^2 rotations.
EigenResult smallest_eigenpair(const Matrix& symmetric);
inline EigenResult smallest_eigenpair(const CorrMatrix& c) { return smallest_eigenpair(c.matrix()); }

}  // namespace gcm
