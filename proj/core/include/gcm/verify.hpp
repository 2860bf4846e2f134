#pragma once

#include "gcm/dataset.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gcm {

enum class Enumeration { Exhaustive, Sampled };

std::string_view to_string(Enumeration e) noexcept;

struct SubsetPlan {
    std::vector<std::vector<std::size_t>> subsets;  ///< each sorted ascending
    Enumeration enumeration = Enumeration::Exhaustive;
};

/// n choose k, saturating at SIZE_MAX.
std::size_t binomial(std::size_t n, std::size_t k) noexcept;

/// All C(n, k) subsets in lexicographic order when that count is within
/// `cap`, otherwise `cap` distinct subsets drawn uniformly from `seed`
/// (returned in lexicographic order).
SubsetPlan enumerate_subsets(std::size_t n, std::size_t k, std::size_t cap, std::uint64_t seed);

struct VerifyOptions {
    std::size_t k_max = 3;
    std::size_t subset_cap = 10'000;
    std::uint64_t seed = 0;
    double tolerance = 1e-7;
    /// Jitter the synthetic data was generated with; copied into the report.
    double applied_jitter = 0.0;
};

struct OrderRecord {
    std::size_t k = 0;
    std::size_t subsets_evaluated = 0;
    Enumeration enumeration = Enumeration::Exhaustive;
    double max_abs_deviation = 0.0;
    std::vector<std::string> worst_subset;
};

struct VerificationReport {
    std::vector<OrderRecord> orders;  ///< k = 2 .. k_max
    double max_mean_deviation = 0.0;  ///< source units
    double max_std_deviation = 0.0;   ///< source units
    double pairwise_deviation = 0.0;
    double applied_jitter = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// Compares correlation structure of two datasets with identical columns.
/// Order 2 is an elementwise correlation-matrix comparison; orders 3..k_max
/// compare multipole values per subset. Moments pass when
/// |dmu| <= tol (1 + |mu_D|) and |dsigma| <= tol sigma_D per column.
VerificationReport verify(const Dataset& source, const Dataset& synthetic, const VerifyOptions& opts);

}  // namespace gcm
