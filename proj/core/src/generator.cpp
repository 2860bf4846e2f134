#include "gcm/generator.hpp"

#include "gcm/error.hpp"
#include "gcm/random.hpp"

#include <cmath>

namespace gcm {

std::string_view to_string(Mode mode) noexcept {
    return mode == Mode::Exact ? "exact" : "expected";
}

Mode parse_mode(std::string_view text) {
    if (text == "exact") return Mode::Exact;
    if (text == "expected") return Mode::Expected;
    throw Error(ErrorCode::InvalidArgument, "mode must be 'exact' or 'expected', got '" + std::string(text) + "'");
}

void Blueprint::validate() const {
    const std::size_t n = names.size();
    if (stats.means.size() != n || stats.stds.size() != n || corr.dim() != n) {
        throw Error(ErrorCode::InvalidArgument, "blueprint dimensions disagree");
    }
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "blueprint has no columns");
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(stats.means[i]) || !(stats.stds[i] > 0.0) || !std::isfinite(stats.stds[i])) {
            throw Error(ErrorCode::InvalidArgument, "blueprint column '" + names[i] + "' has invalid moments");
        }
    }
}

Blueprint fit(const Dataset& d) {
    Blueprint b{d.names(), column_stats(d), correlation_matrix(d), 0.0};
    return b;
}

Dataset sample_noise(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    NormalSampler rng(seed);
    Matrix z(rows, cols);
    for (double& x : z.data()) x = rng();
    std::vector<std::string> names;
    names.reserve(cols);
    for (std::size_t c = 0; c < cols; ++c) names.push_back("z" + std::to_string(c + 1));
    return {std::move(names), std::move(z)};
}

namespace {

void standardize_in_place(Matrix& x) {
    const std::size_t m = x.rows();
    const std::size_t n = x.cols();
    std::vector<double> mean(n, 0.0), ss(n, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
        const auto row = x.row(r);
        for (std::size_t c = 0; c < n; ++c) mean[c] += row[c];
    }
    for (double& mu : mean) mu /= static_cast<double>(m);
    for (std::size_t r = 0; r < m; ++r) {
        auto row = x.row(r);
        for (std::size_t c = 0; c < n; ++c) {
            row[c] -= mean[c];
            ss[c] += row[c] * row[c];
        }
    }
    for (std::size_t c = 0; c < n; ++c) {
        ss[c] = std::sqrt(ss[c] / static_cast<double>(m - 1));
        if (!(ss[c] > 0.0)) throw Error(ErrorCode::DegenerateNoise, "noise column has zero variance");
    }
    for (std::size_t r = 0; r < m; ++r) {
        auto row = x.row(r);
        for (std::size_t c = 0; c < n; ++c) row[c] /= ss[c];
    }
}

}  // namespace

Dataset whiten(const Dataset& z) {
    if (z.rows() <= z.cols()) {
        throw Error(ErrorCode::DegenerateNoise,
                    "whitening needs more rows than columns (" + std::to_string(z.rows()) + " <= " +
                        std::to_string(z.cols()) + ")");
    }
    Matrix w = z.values();
    standardize_in_place(w);

    const CorrMatrix r = correlation_matrix(Dataset(z.names(), w));
    const auto factor = try_cholesky(r.matrix());
    if (!factor) throw Error(ErrorCode::DegenerateNoise, "noise correlation matrix is not positive definite");
    solve_rows_lower_transpose(w, *factor);
    standardize_in_place(w);
    return {z.names(), std::move(w)};
}

Matrix impose_correlation(const Matrix& noise, const CholeskyFactor& factor) {
    const std::size_t n = factor.dim();
    if (noise.cols() != n) throw Error(ErrorCode::LengthMismatch, "noise width differs from factor size");
    const Matrix& l = factor.lower();
    Matrix out(noise.rows(), n);
    for (std::size_t r = 0; r < noise.rows(); ++r) {
        const auto zr = noise.row(r);
        auto sr = out.row(r);
        for (std::size_t i = 0; i < n; ++i) {
            const auto li = l.row(i);
            double acc = 0.0;
            for (std::size_t k = 0; k <= i; ++k) acc += zr[k] * li[k];
            sr[i] = acc;
        }
    }
    return out;
}

Synthetic generate(const Blueprint& b, const GcmConfig& cfg) {
    b.validate();
    const std::size_t n = b.dim();
    if (cfg.rows < 2) throw Error(ErrorCode::InvalidArgument, "need at least 2 synthetic rows");
    if (cfg.mode == Mode::Exact && cfg.rows <= n) {
        throw Error(ErrorCode::ExactModeRankError,
                    "exact mode needs more rows than features (" + std::to_string(cfg.rows) +
                        " <= " + std::to_string(n) + ")");
    }

    auto [factor, jitter] = cholesky(b.corr, cfg.jitter);
    // Jitter inflates the diagonal to 1 + j; scale back so the imposed
    // correlation keeps a unit diagonal and the stds stay exact.
    if (jitter > 0.0) factor = factor.scaled(1.0 / std::sqrt(1.0 + jitter));

    Dataset noise = sample_noise(cfg.rows, n, cfg.seed);
    if (cfg.mode == Mode::Exact) noise = whiten(noise);

    Matrix s = impose_correlation(noise.values(), factor);
    for (std::size_t r = 0; r < cfg.rows; ++r) {
        auto sr = s.row(r);
        for (std::size_t i = 0; i < n; ++i) sr[i] = sr[i] * b.stats.stds[i] + b.stats.means[i];
    }
    return {Dataset(b.names, std::move(s)), jitter};
}

}  // namespace gcm
