#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string_view>

namespace ccd {

/// SplitMix64 finalizer (Steele, Lea & Flood 2014). Bijective 64-bit mix.
[[nodiscard]] constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derive an independent stream seed from a parent seed and a stream tag.
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag) noexcept {
    return splitmix64_mix(splitmix64_mix(parent) ^ (tag * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL));
}

/// 64-bit FNV-1a, used to fold names into seeds.
[[nodiscard]] constexpr std::uint64_t fnv1a64(std::string_view s) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Counter-based SplitMix64 generator: output i is mix(seed + (i+1)·γ).
///
/// Satisfies UniformRandomBitGenerator. All stochastic components of the
/// library draw from this generator so that a (seed, call sequence) pair
/// pins every realization bit-for-bit on any conforming platform.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        return splitmix64_mix(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [lo, hi] (inclusive); Lemire-style rejection keeps it unbiased.
    std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) noexcept {
        const std::uint64_t range = hi - lo;
        if (range == std::numeric_limits<std::uint64_t>::max()) return (*this)();
        const std::uint64_t span = range + 1;
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % span;
        std::uint64_t r;
        do {
            r = (*this)();
        } while (r >= limit);
        return lo + r % span;
    }

    /// Standard normal via Box-Muller. std::normal_distribution is avoided
    /// because its algorithm is implementation-defined.
    double normal() noexcept {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace ccd
