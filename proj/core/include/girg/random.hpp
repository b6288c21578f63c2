#pragma once

#include <cstdint>
#include <limits>

namespace girg {

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

/// SplitMix64 output function (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value) noexcept {
    return mix64(seed ^ mix64(value + kGoldenGamma));
}

/// Top 53 bits of a 64-bit word as a double in [0,1).
constexpr double to_unit_double(std::uint64_t bits) noexcept {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Independent random streams derived from one master seed.
enum class Stream : std::uint64_t {
    weights = 1,
    positions = 2,
    edges = 3,
    radii = 4,
    angles = 5,
};

constexpr std::uint64_t derive_seed(std::uint64_t master, Stream stream) noexcept {
    return hash_combine(mix64(master), static_cast<std::uint64_t>(stream));
}

/// Counter-based generator: the n-th output depends only on (key, n).
/// Satisfies UniformRandomBitGenerator so it composes with <random>.
class CounterRng {
public:
    using result_type = std::uint64_t;

    constexpr explicit CounterRng(std::uint64_t key) noexcept : state_(key) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() noexcept {
        state_ += kGoldenGamma;
        return mix64(state_);
    }

    /// Uniform in [0,1).
    constexpr double uniform() noexcept { return to_unit_double((*this)()); }

    /// The n-th uniform of the stream keyed by `key`, without materializing the stream.
    static constexpr double uniform_at(std::uint64_t key, std::uint64_t index) noexcept {
        return to_unit_double(mix64(key + (index + 1) * kGoldenGamma));
    }

private:
    std::uint64_t state_;
};

} // namespace girg
