#pragma once

#include "gcm/corr.hpp"
#include "gcm/dataset.hpp"
#include "gcm/linalg.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gcm {

enum class Mode {
    /// Noise is whitened first, so sample statistics of the output match
    /// the blueprint exactly (up to rounding).
    Exact,
    /// Raw noise; matches the blueprint in expectation only.
    Expected,
};

std::string_view to_string(Mode mode) noexcept;
Mode parse_mode(std::string_view text);

struct GcmConfig {
    std::size_t rows = 0;
    std::uint64_t seed = 0;
    Mode mode = Mode::Exact;
    JitterPolicy jitter;
};

/// Everything retained from a source dataset: names, moments, and the
/// pairwise correlation matrix. The source rows are not kept.
struct Blueprint {
    std::vector<std::string> names;
    ColumnStats stats;
    CorrMatrix corr;
    double applied_jitter = 0.0;

    /// Throws Error(InvalidArgument) when dimensions disagree or a std is
    /// not strictly positive.
    void validate() const;

    [[nodiscard]] std::size_t dim() const noexcept { return names.size(); }
};

Blueprint fit(const Dataset& d);

/// rows x cols i.i.d. standard normals; row-major draw order.
Dataset sample_noise(std::size_t rows, std::size_t cols, std::uint64_t seed);

/// Finite-sample whitening: zero column means, unit sample stds, identity
/// sample correlation. Throws Error(DegenerateNoise) if rows <= cols or
/// the noise correlation is not PD.
Dataset whiten(const Dataset& z);

/// Rows of `noise` mapped through the factor: result = noise * L^T, so
/// row covariance I becomes L L^T.
Matrix impose_correlation(const Matrix& noise, const CholeskyFactor& factor);

struct Synthetic {
    Dataset data;
    double applied_jitter = 0.0;
};

Synthetic generate(const Blueprint& b, const GcmConfig& cfg);

}  // namespace gcm
