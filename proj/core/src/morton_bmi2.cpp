#include <girg/morton.hpp>

#include <immintrin.h>

namespace girg::morton {

namespace {

// Deposit mask of coordinate k: bits k' * d + (d - 1 - k) for k' < level.
std::uint64_t deposit_mask(unsigned dimension, unsigned level, unsigned k) noexcept {
    std::uint64_t mask = 0;
    for (unsigned bit = 0; bit < level; ++bit)
        mask |= 1ULL << (bit * dimension + (dimension - 1 - k));
    return mask;
}

struct MaskTable {
    // [dimension - 1][level][k]
    std::uint64_t masks[kMaxDimension][kMortonBits + 1][kMaxDimension] = {};

    MaskTable() {
        for (unsigned d = 1; d <= kMaxDimension; ++d)
            for (unsigned level = 0; level * d <= kMortonBits; ++level)
                for (unsigned k = 0; k < d; ++k)
                    masks[d - 1][level][k] = deposit_mask(d, level, k);
    }
};

const MaskTable& table() {
    static const MaskTable instance;
    return instance;
}

} // namespace

std::uint64_t bmi2_encode(const std::uint64_t* coords, unsigned dimension, unsigned level) noexcept {
    const auto& masks = table().masks[dimension - 1][level];
    std::uint64_t code = 0;
    for (unsigned k = 0; k < dimension; ++k)
        code |= _pdep_u64(coords[k], masks[k]);
    return code;
}

void bmi2_decode(std::uint64_t code, unsigned dimension, unsigned level, std::uint64_t* out) noexcept {
    const auto& masks = table().masks[dimension - 1][level];
    for (unsigned k = 0; k < dimension; ++k)
        out[k] = _pext_u64(code, masks[k]);
}

} // namespace girg::morton
