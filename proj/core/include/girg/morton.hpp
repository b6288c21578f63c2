#pragma once

#include <girg/model.hpp>

#include <array>
#include <cstdint>
#include <span>

namespace girg {

/// Morton codes use at most this many bits (d * level <= 62).
inline constexpr unsigned kMortonBits = 62;

using GridCoords = std::array<std::uint64_t, kMaxDimension>;

/// Interleaves the low `level` bits of each coordinate. Within every bit group
/// the first coordinate takes the most significant position, e.g. for d = 2
/// the coordinates a3a2a1a0, b3b2b1b0 encode to a3b3a2b2a1b1a0b0.
/// Throws std::invalid_argument if d * level exceeds the 62-bit budget or a
/// coordinate does not fit into `level` bits.
std::uint64_t morton_encode(std::span<const std::uint64_t> coords, unsigned level);

/// Inverse of morton_encode; `out.size()` is the dimension.
void morton_decode(std::uint64_t code, unsigned level, std::span<std::uint64_t> out);

namespace morton {

// Unchecked kernels. `portable_*` is a bit loop that stops after `level`
// bits; `bmi2_*` uses pdep/pext and is only linked when GIRG_HAVE_BMI2 is set.

inline std::uint64_t portable_encode(const std::uint64_t* coords, unsigned dimension, unsigned level) noexcept {
    std::uint64_t code = 0;
    for (unsigned bit = 0; bit < level; ++bit)
        for (unsigned k = 0; k < dimension; ++k)
            code |= ((coords[k] >> bit) & 1ULL) << (bit * dimension + (dimension - 1 - k));
    return code;
}

inline void portable_decode(std::uint64_t code, unsigned dimension, unsigned level, std::uint64_t* out) noexcept {
    for (unsigned k = 0; k < dimension; ++k)
        out[k] = 0;
    for (unsigned bit = 0; bit < level; ++bit)
        for (unsigned k = 0; k < dimension; ++k)
            out[k] |= ((code >> (bit * dimension + (dimension - 1 - k))) & 1ULL) << bit;
}

#ifdef GIRG_HAVE_BMI2
std::uint64_t bmi2_encode(const std::uint64_t* coords, unsigned dimension, unsigned level) noexcept;
void bmi2_decode(std::uint64_t code, unsigned dimension, unsigned level, std::uint64_t* out) noexcept;
#endif

/// True if the BMI2 path is compiled in and the running CPU supports it.
bool bmi2_available() noexcept;

/// Dispatches to the fastest available kernel; results are identical either way.
std::uint64_t encode(const std::uint64_t* coords, unsigned dimension, unsigned level) noexcept;
void decode(std::uint64_t code, unsigned dimension, unsigned level, std::uint64_t* out) noexcept;

} // namespace morton

} // namespace girg
