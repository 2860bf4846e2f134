#pragma once

#include "gcm/corr.hpp"
#include "gcm/dataset.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace gcm {

/// Multipole correlation of a feature subset: 1 minus the smallest
/// variance of any unit-norm combination of the z-normalized features.
struct MultipoleResult {
    double value = 0.0;  ///< clamped to [0, 1]
    double raw = 0.0;    ///< 1 - lambda_min before clamping
    std::vector<double> minimizer;
    std::vector<std::size_t> subset;
};

/// Throws Error(InvalidSubset) unless the subset has k >= 2 distinct
/// indices below n.
void validate_subset(std::span<const std::size_t> subset, std::size_t n);

MultipoleResult multipole(const Dataset& d, std::span<const std::size_t> subset);

/// Same measure read off a precomputed correlation matrix of all features.
/// Bit-identical to the Dataset overload on the dataset `full` came from.
MultipoleResult multipole(const CorrMatrix& full, std::span<const std::size_t> subset);

/// Direct minimization of the projected variance over the unit sphere:
/// `trials` random starts, each refined by projected gradient descent.
/// Never touches the eigensolver. Trial r draws from seed + r.
double multipole_oracle(const Dataset& d, std::span<const std::size_t> subset,
                        std::size_t trials, std::uint64_t seed);

}  // namespace gcm
