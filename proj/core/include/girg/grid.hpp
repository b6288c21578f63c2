#pragma once

#include <girg/morton.hpp>

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <span>
#include <utility>

namespace girg {

/// One cell of the hierarchical torus subdivision. Level l has side 2^-l;
/// the children of (l, z) are (l + 1, z * 2^d + k) for k < 2^d.
struct CellId {
    unsigned level = 0;
    std::uint64_t code = 0;

    friend constexpr auto operator<=>(const CellId&, const CellId&) = default;
};

inline constexpr std::uint64_t children_per_cell(unsigned dimension) noexcept { return 1ULL << dimension; }

inline constexpr CellId first_child(CellId cell, unsigned dimension) noexcept {
    return {cell.level + 1, cell.code << dimension};
}

inline constexpr CellId parent(CellId cell, unsigned dimension) noexcept {
    return {cell.level - 1, cell.code >> dimension};
}

/// Codes of the level-`level` descendants of `cell`, as the half-open range [first, last).
inline constexpr std::pair<std::uint64_t, std::uint64_t> descendant_range(CellId cell, unsigned level,
                                                                          unsigned dimension) noexcept {
    const unsigned shift = (level - cell.level) * dimension;
    return {cell.code << shift, (cell.code + 1) << shift};
}

/// Deepest level usable for n vertices: min(62 / d, ceil(log2(n) / d) + 1).
unsigned depth_cap(std::uint64_t n, unsigned dimension);

CellId cell_of_point(std::span<const double> point, unsigned level);

/// Integer cell coordinates of a point at `level` (floor(x_i * 2^level)).
inline void grid_coords_of_point(std::span<const double> point, unsigned level, std::uint64_t* out) noexcept {
    const double scale = static_cast<double>(1ULL << level);
    const std::uint64_t last = (1ULL << level) - 1;
    for (std::size_t k = 0; k < point.size(); ++k)
        out[k] = std::min(static_cast<std::uint64_t>(point[k] * scale), last);
}

/// Chebyshev adjacency on the torus, wrap-around included; a cell neighbors itself.
/// Throws std::invalid_argument on level mismatch.
bool are_neighbors(CellId a, CellId b, unsigned dimension);

/// Minimum torus L-infinity distance between points of two same-level cells.
double min_cell_distance(CellId a, CellId b, unsigned dimension);

namespace grid {

/// Per-dimension torus gap in cells between two same-level codes.
inline std::uint64_t max_gap(std::uint64_t a, std::uint64_t b, unsigned level, unsigned dimension) noexcept {
    std::uint64_t ca[kMaxDimension];
    std::uint64_t cb[kMaxDimension];
    morton::decode(a, dimension, level, ca);
    morton::decode(b, dimension, level, cb);
    const std::uint64_t side = 1ULL << level;
    std::uint64_t gap = 0;
    for (unsigned k = 0; k < dimension; ++k) {
        const std::uint64_t diff = ca[k] > cb[k] ? ca[k] - cb[k] : cb[k] - ca[k];
        gap = std::max(gap, std::min(diff, side - diff));
    }
    return gap;
}

inline bool neighbors_unchecked(std::uint64_t a, std::uint64_t b, unsigned level, unsigned dimension) noexcept {
    return a == b || max_gap(a, b, level, dimension) <= 1;
}

inline double min_distance_unchecked(std::uint64_t a, std::uint64_t b, unsigned level, unsigned dimension) noexcept {
    const std::uint64_t gap = max_gap(a, b, level, dimension);
    return gap <= 1 ? 0.0 : std::ldexp(static_cast<double>(gap - 1), -static_cast<int>(level));
}

} // namespace grid

} // namespace girg
