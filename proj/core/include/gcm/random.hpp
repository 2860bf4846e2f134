#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>

namespace gcm {

/// SplitMix64: 64-bit state, trivially cheap to seed. Used where many
/// short independent streams are needed (one per oracle trial).
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

/// Standard-normal variates through the Box-Muller transform. Both outputs
/// of each transform are used, in order, so the stream is a fixed function
/// of the engine's seed.
template <typename Engine>
class BasicNormalSampler {
public:
    explicit BasicNormalSampler(std::uint64_t seed) : engine_(seed) {}

    double operator()() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // 1 - u lies in (0, 1], so the log is finite.
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    Engine& engine() noexcept { return engine_; }

private:
    Engine engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Generator noise: mt19937_64 + Box-Muller.
using NormalSampler = BasicNormalSampler<std::mt19937_64>;

}  // namespace gcm
