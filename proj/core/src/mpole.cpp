#include "gcm/mpole.hpp"

#include "gcm/error.hpp"
#include "gcm/linalg.hpp"
#include "gcm/parallel.hpp"
#include "gcm/random.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <unordered_set>

namespace gcm {

void validate_subset(std::span<const std::size_t> subset, std::size_t n) {
    if (subset.size() < 2) {
        throw Error(ErrorCode::InvalidSubset,
                    "multipole needs k >= 2 columns, got " + std::to_string(subset.size()));
    }
    std::unordered_set<std::size_t> seen;
    for (std::size_t idx : subset) {
        if (idx >= n) {
            throw Error(ErrorCode::InvalidSubset,
                        "column index " + std::to_string(idx) + " out of range (n = " + std::to_string(n) + ")");
        }
        if (!seen.insert(idx).second) {
            throw Error(ErrorCode::InvalidSubset, "column index " + std::to_string(idx) + " repeated");
        }
    }
}

namespace {

MultipoleResult from_submatrix(const CorrMatrix& sub, std::span<const std::size_t> subset) {
    EigenResult eig = smallest_eigenpair(sub);
    // Fix the sign so the largest-magnitude weight is positive.
    const auto big = std::max_element(eig.eigvec_min.begin(), eig.eigvec_min.end(),
                                      [](double a, double b) { return std::abs(a) < std::abs(b); });
    if (*big < 0.0) {
        for (double& w : eig.eigvec_min) w = -w;
    }
    MultipoleResult r;
    r.raw = 1.0 - eig.lambda_min;
    r.value = std::clamp(r.raw, 0.0, 1.0);
    r.minimizer = std::move(eig.eigvec_min);
    r.subset.assign(subset.begin(), subset.end());
    return r;
}

constexpr std::size_t kOracleIterations = 500;
constexpr double kOracleTolerance = 1e-12;

// One random restart: start at a normal direction drawn from `subseed`,
// then projected gradient descent of v^T G v on the unit sphere. The
// gradient 2 G v is projected onto the tangent space at v. Returns the
// final projected variance. `v` and `gv` are k-length scratch.
template <typename Vec>
double descend(const double* gram, std::size_t k, std::uint64_t subseed, Vec& v, Vec& gv) {
    BasicNormalSampler<SplitMix64> rng(subseed);
    const double step = 0.1 / static_cast<double>(k);

    auto normalize = [&] {
        double norm = 0.0;
        for (std::size_t a = 0; a < k; ++a) norm += v[a] * v[a];
        const double inv = 1.0 / std::sqrt(norm);
        for (std::size_t a = 0; a < k; ++a) v[a] *= inv;
    };
    auto objective = [&] {
        double f = 0.0;
        for (std::size_t a = 0; a < k; ++a) {
            double s = 0.0;
            for (std::size_t b = 0; b < k; ++b) s += gram[a * k + b] * v[b];
            gv[a] = s;
            f += v[a] * s;
        }
        return f;
    };

    for (std::size_t a = 0; a < k; ++a) v[a] = rng();
    normalize();
    double f = objective();
    for (std::size_t it = 0; it < kOracleIterations; ++it) {
        for (std::size_t a = 0; a < k; ++a) v[a] -= step * 2.0 * (gv[a] - f * v[a]);
        normalize();
        const double next = objective();
        const bool done = std::abs(f - next) < kOracleTolerance;
        f = next;
        if (done) break;
    }
    return f;
}

// Eight restarts advanced in lockstep, stored component-major so each step
// is a loop over independent lanes. Per lane the arithmetic is exactly that
// of descend(), so results do not depend on how trials are batched.
constexpr std::size_t kBatch = 8;

template <std::size_t K>
void descend_batch(const double* gram, std::uint64_t first_seed, std::size_t lanes, double* out) {
    using Lanes = std::array<double, kBatch>;
    std::array<Lanes, K> v{}, gv{};
    Lanes f{}, next{}, scale{};
    std::array<bool, kBatch> done{};
    const double step = 0.1 / static_cast<double>(K);

    for (std::size_t l = 0; l < kBatch; ++l) {
        if (l < lanes) {
            BasicNormalSampler<SplitMix64> rng(first_seed + l);
            for (std::size_t a = 0; a < K; ++a) v[a][l] = rng();
        } else {
            v[0][l] = 1.0;  // padding lane, never reported
            done[l] = true;
        }
    }
    auto normalize = [&] {
        scale.fill(0.0);
        for (std::size_t a = 0; a < K; ++a)
            for (std::size_t l = 0; l < kBatch; ++l) scale[l] += v[a][l] * v[a][l];
        for (std::size_t l = 0; l < kBatch; ++l) scale[l] = 1.0 / std::sqrt(scale[l]);
        for (std::size_t a = 0; a < K; ++a)
            for (std::size_t l = 0; l < kBatch; ++l) v[a][l] *= scale[l];
    };
    auto objective = [&](Lanes& dst) {
        dst.fill(0.0);
        for (std::size_t a = 0; a < K; ++a) {
            Lanes s{};
            for (std::size_t b = 0; b < K; ++b)
                for (std::size_t l = 0; l < kBatch; ++l) s[l] += gram[a * K + b] * v[b][l];
            gv[a] = s;
            for (std::size_t l = 0; l < kBatch; ++l) dst[l] += v[a][l] * s[l];
        }
    };

    normalize();
    objective(f);
    for (std::size_t it = 0; it < kOracleIterations; ++it) {
        for (std::size_t a = 0; a < K; ++a)
            for (std::size_t l = 0; l < kBatch; ++l) v[a][l] -= step * 2.0 * (gv[a][l] - f[l] * v[a][l]);
        normalize();
        objective(next);
        bool all_done = true;
        for (std::size_t l = 0; l < kBatch; ++l) {
            if (!done[l] && std::abs(f[l] - next[l]) < kOracleTolerance) {
                done[l] = true;
                out[l] = next[l];
            }
            all_done = all_done && done[l];
        }
        f = next;
        if (all_done) return;
    }
    for (std::size_t l = 0; l < lanes; ++l) {
        if (!done[l]) out[l] = f[l];
    }
}

double descend_dynamic(const double* gram, std::size_t k, std::uint64_t subseed) {
    std::vector<double> v(k), gv(k);
    return descend(gram, k, subseed, v, gv);
}

}  // namespace

MultipoleResult multipole(const Dataset& d, std::span<const std::size_t> subset) {
    validate_subset(subset, d.cols());
    const CorrMatrix sub = correlation_matrix(d.select({subset.begin(), subset.end()}));
    return from_submatrix(sub, subset);
}

MultipoleResult multipole(const CorrMatrix& full, std::span<const std::size_t> subset) {
    validate_subset(subset, full.dim());
    return from_submatrix(full.submatrix(subset), subset);
}

double multipole_oracle(const Dataset& d, std::span<const std::size_t> subset, std::size_t trials,
                        std::uint64_t seed) {
    validate_subset(subset, d.cols());
    if (trials == 0) throw Error(ErrorCode::InvalidArgument, "oracle needs at least one trial");

    const Dataset z = znormalize(d.select({subset.begin(), subset.end()}));
    const std::size_t k = subset.size();
    const std::size_t m = z.rows();

    // var(Zv) = v^T G v with G the Gram matrix of the z-normalized columns
    // over m - 1, matching the sample-std normalization.
    std::vector<double> gram(k * k, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
        const auto row = z.values().row(r);
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = a; b < k; ++b) gram[a * k + b] += row[a] * row[b];
    }
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a; b < k; ++b) {
            gram[a * k + b] /= static_cast<double>(m - 1);
            gram[b * k + a] = gram[a * k + b];
        }
    }

    std::vector<double> best(trials);
    auto run_batched = [&](auto kernel) {
        const std::size_t batches = (trials + kBatch - 1) / kBatch;
        parallel_for(batches, [&](std::size_t b) {
            const std::size_t first = b * kBatch;
            kernel(gram.data(), seed + first, std::min(kBatch, trials - first), best.data() + first);
        });
    };
    switch (k) {
        case 2: run_batched(descend_batch<2>); break;
        case 3: run_batched(descend_batch<3>); break;
        case 4: run_batched(descend_batch<4>); break;
        case 5: run_batched(descend_batch<5>); break;
        default:
            parallel_for(trials, [&](std::size_t t) { best[t] = descend_dynamic(gram.data(), k, seed + t); });
            break;
    }
    return 1.0 - *std::min_element(best.begin(), best.end());
}

}  // namespace gcm
