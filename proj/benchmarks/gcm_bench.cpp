#include "gcm/corr.hpp"
#include "gcm/dataset.hpp"
#include "gcm/generator.hpp"
#include "gcm/linalg.hpp"
#include "gcm/mpole.hpp"
#include "gcm/verify.hpp"

#include <benchmark/benchmark.h>

#include <cstdint>
#include <numeric>
#include <vector>

namespace {

// Noise pushed through a random mixing so columns are correlated.
gcm::Dataset correlated(std::size_t m, std::size_t n, std::uint64_t seed) {
    const gcm::Dataset z = gcm::sample_noise(m, n, seed);
    const gcm::Dataset a = gcm::sample_noise(n, n, seed + 1);
    gcm::Matrix mix = a.values();
    for (std::size_t i = 0; i < n; ++i) mix(i, i) += 1.5;
    return {z.names(), z.values() * mix};
}

void BM_CorrelationMatrix(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const gcm::Dataset d = correlated(2000, n, 1);
    for (auto _ : state) benchmark::DoNotOptimize(gcm::correlation_matrix(d));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CorrelationMatrix)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_Cholesky(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const gcm::CorrMatrix c = gcm::correlation_matrix(correlated(2 * n + 10, n, 2));
    for (auto _ : state) benchmark::DoNotOptimize(gcm::cholesky(c));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Cholesky)->Arg(50)->Arg(100)->Arg(200)->Arg(400)->Complexity(benchmark::oNCubed);

void BM_ImposeCorrelation(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const gcm::CorrMatrix c = gcm::correlation_matrix(correlated(2 * n + 10, n, 3));
    const gcm::CholeskyFactor l = gcm::cholesky(c).factor;
    const gcm::Dataset z = gcm::sample_noise(10000, n, 4);
    for (auto _ : state) benchmark::DoNotOptimize(gcm::impose_correlation(z.values(), l));
    state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_ImposeCorrelation)->Arg(10)->Arg(50)->Arg(100);

void BM_Generate(benchmark::State& state) {
    const bool exact = state.range(0) != 0;
    const gcm::Blueprint b = gcm::fit(correlated(5000, 20, 5));
    const gcm::GcmConfig cfg{.rows = 10000, .seed = 6, .mode = exact ? gcm::Mode::Exact : gcm::Mode::Expected};
    for (auto _ : state) benchmark::DoNotOptimize(gcm::generate(b, cfg));
    state.SetLabel(exact ? "exact" : "expected");
}
BENCHMARK(BM_Generate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Multipole(benchmark::State& state) {
    const auto k = static_cast<std::size_t>(state.range(0));
    const gcm::CorrMatrix c = gcm::correlation_matrix(correlated(1000, 40, 7));
    std::vector<std::size_t> subset(k);
    std::iota(subset.begin(), subset.end(), std::size_t{0});
    for (auto _ : state) benchmark::DoNotOptimize(gcm::multipole(c, subset));
}
BENCHMARK(BM_Multipole)->Arg(3)->Arg(10)->Arg(40);

void BM_MultipoleOracle(benchmark::State& state) {
    const gcm::Dataset d = correlated(500, 3, 8);
    const std::vector<std::size_t> subset{0, 1, 2};
    for (auto _ : state) benchmark::DoNotOptimize(gcm::multipole_oracle(d, subset, 10000, 9));
}
BENCHMARK(BM_MultipoleOracle)->Unit(benchmark::kMillisecond);

void BM_Verify(benchmark::State& state) {
    const gcm::Dataset src = correlated(2000, 12, 10);
    const gcm::Synthetic syn = gcm::generate(gcm::fit(src), {.rows = 2000, .seed = 11, .mode = gcm::Mode::Exact});
    gcm::VerifyOptions opts;
    opts.k_max = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(gcm::verify(src, syn.data, opts));
}
BENCHMARK(BM_Verify)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
