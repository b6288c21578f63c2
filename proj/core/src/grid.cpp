#include <girg/grid.hpp>

#include <bit>
#include <stdexcept>

namespace girg {

unsigned depth_cap(std::uint64_t n, unsigned dimension) {
    if (dimension < 1 || dimension > kMaxDimension)
        throw std::invalid_argument("dimension must be in [1, 5]");
    const unsigned log2_ceil = n <= 1 ? 0u : static_cast<unsigned>(std::bit_width(n - 1));
    const unsigned by_size = (log2_ceil + dimension - 1) / dimension + 1;
    return std::min(kMortonBits / dimension, by_size);
}

CellId cell_of_point(std::span<const double> point, unsigned level) {
    if (point.empty() || point.size() > kMaxDimension)
        throw std::invalid_argument("dimension must be in [1, 5]");
    std::uint64_t coords[kMaxDimension];
    grid_coords_of_point(point, level, coords);
    return {level, morton_encode({coords, point.size()}, level)};
}

namespace {

void check_same_level(CellId a, CellId b, unsigned dimension) {
    if (a.level != b.level)
        throw std::invalid_argument("cells must be on the same level");
    if (dimension < 1 || dimension > kMaxDimension)
        throw std::invalid_argument("dimension must be in [1, 5]");
    if (dimension * a.level > kMortonBits)
        throw std::invalid_argument("level exceeds the Morton budget");
}

} // namespace

bool are_neighbors(CellId a, CellId b, unsigned dimension) {
    check_same_level(a, b, dimension);
    return grid::neighbors_unchecked(a.code, b.code, a.level, dimension);
}

double min_cell_distance(CellId a, CellId b, unsigned dimension) {
    check_same_level(a, b, dimension);
    return grid::min_distance_unchecked(a.code, b.code, a.level, dimension);
}

} // namespace girg
