#include "gcm/verify.hpp"

#include "gcm/corr.hpp"
#include "gcm/error.hpp"
#include "gcm/mpole.hpp"
#include "gcm/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>

namespace gcm {

std::string_view to_string(Enumeration e) noexcept {
    return e == Enumeration::Exhaustive ? "exhaustive" : "sampled";
}

std::size_t binomial(std::size_t n, std::size_t k) noexcept {
    if (k > n) return 0;
    k = std::min(k, n - k);
    constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
    std::size_t result = 1;
    for (std::size_t i = 0; i < k; ++i) {
        // result * (n - i) is divisible by i + 1; cancel first so the
        // overflow check is exact.
        const std::size_t g = std::gcd(result, i + 1);
        const std::size_t factor = (n - i) / ((i + 1) / g);
        result /= g;
        if (result > kMax / factor) return kMax;
        result *= factor;
    }
    return result;
}

namespace {

// Unbiased draw from [0, bound) by rejection.
std::size_t draw_below(std::mt19937_64& rng, std::size_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return static_cast<std::size_t>(x % bound);
}

}  // namespace

SubsetPlan enumerate_subsets(std::size_t n, std::size_t k, std::size_t cap, std::uint64_t seed) {
    if (k < 2 || k > n) {
        throw Error(ErrorCode::InvalidOrder,
                    "order " + std::to_string(k) + " outside [2, " + std::to_string(n) + "]");
    }
    if (cap == 0) throw Error(ErrorCode::InvalidArgument, "subset cap must be at least 1");

    SubsetPlan plan;
    if (binomial(n, k) <= cap) {
        plan.enumeration = Enumeration::Exhaustive;
        std::vector<std::size_t> idx(k);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            plan.subsets.push_back(idx);
            std::size_t i = k;
            while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
        return plan;
    }

    plan.enumeration = Enumeration::Sampled;
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> pool(n);
    std::set<std::vector<std::size_t>> chosen;
    while (chosen.size() < cap) {
        std::iota(pool.begin(), pool.end(), 0);
        for (std::size_t i = 0; i < k; ++i) {
            std::swap(pool[i], pool[i + draw_below(rng, n - i)]);
        }
        std::vector<std::size_t> subset(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
        std::sort(subset.begin(), subset.end());
        chosen.insert(std::move(subset));
    }
    plan.subsets.assign(chosen.begin(), chosen.end());
    return plan;
}

VerificationReport verify(const Dataset& source, const Dataset& synthetic, const VerifyOptions& opts) {
    if (source.names() != synthetic.names()) {
        throw Error(ErrorCode::ColumnMismatch, "source and synthetic columns differ in names or order");
    }
    const std::size_t n = source.cols();
    if (opts.k_max < 2 || opts.k_max > n) {
        throw Error(ErrorCode::InvalidOrder,
                    "max order " + std::to_string(opts.k_max) + " outside [2, " + std::to_string(n) + "]");
    }
    if (!(opts.tolerance > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
    if (opts.subset_cap == 0) throw Error(ErrorCode::InvalidArgument, "subset cap must be at least 1");

    VerificationReport report;
    report.tolerance = opts.tolerance;
    report.applied_jitter = opts.applied_jitter;

    const ColumnStats src_stats = column_stats(source);
    const ColumnStats syn_stats = column_stats(synthetic);
    bool moments_ok = true;
    for (std::size_t i = 0; i < n; ++i) {
        const double dmu = std::abs(syn_stats.means[i] - src_stats.means[i]);
        const double dsigma = std::abs(syn_stats.stds[i] - src_stats.stds[i]);
        report.max_mean_deviation = std::max(report.max_mean_deviation, dmu);
        report.max_std_deviation = std::max(report.max_std_deviation, dsigma);
        moments_ok = moments_ok && dmu <= opts.tolerance * (1.0 + std::abs(src_stats.means[i])) &&
                     dsigma <= opts.tolerance * src_stats.stds[i];
    }

    const CorrMatrix src_corr = correlation_matrix(source);
    const CorrMatrix syn_corr = correlation_matrix(synthetic);
    auto names_of = [&](const std::vector<std::size_t>& idx) {
        std::vector<std::string> out;
        for (std::size_t i : idx) out.push_back(source.names()[i]);
        return out;
    };

    OrderRecord pairwise{2, binomial(n, 2), Enumeration::Exhaustive, -1.0, {}};
    std::vector<std::size_t> worst;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dev = std::abs(syn_corr(i, j) - src_corr(i, j));
            if (dev > pairwise.max_abs_deviation) {
                pairwise.max_abs_deviation = dev;
                worst = {i, j};
            }
        }
    }
    pairwise.worst_subset = names_of(worst);
    report.pairwise_deviation = pairwise.max_abs_deviation;
    report.orders.push_back(std::move(pairwise));

    for (std::size_t k = 3; k <= opts.k_max; ++k) {
        const SubsetPlan plan = enumerate_subsets(n, k, opts.subset_cap, opts.seed);
        std::vector<double> deviation(plan.subsets.size());
        parallel_for(plan.subsets.size(), [&](std::size_t s) {
            const auto& subset = plan.subsets[s];
            deviation[s] = std::abs(multipole(syn_corr, subset).value - multipole(src_corr, subset).value);
        });
        OrderRecord record{k, plan.subsets.size(), plan.enumeration, -1.0, {}};
        std::size_t arg = 0;
        for (std::size_t s = 0; s < deviation.size(); ++s) {
            if (deviation[s] > record.max_abs_deviation) {
                record.max_abs_deviation = deviation[s];
                arg = s;
            }
        }
        record.worst_subset = names_of(plan.subsets[arg]);
        report.orders.push_back(std::move(record));
    }

    bool structure_ok = true;
    for (const auto& record : report.orders) {
        structure_ok = structure_ok && record.max_abs_deviation <= opts.tolerance;
    }
    report.pass = structure_ok && moments_ok;
    return report;
}

}  // namespace gcm
