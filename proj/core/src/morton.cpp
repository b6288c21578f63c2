#include <girg/morton.hpp>

#include <stdexcept>
#include <string>

namespace girg {

namespace morton {

bool bmi2_available() noexcept {
#ifdef GIRG_HAVE_BMI2
    static const bool available = __builtin_cpu_supports("bmi2");
    return available;
#else
    return false;
#endif
}

std::uint64_t encode(const std::uint64_t* coords, unsigned dimension, unsigned level) noexcept {
#ifdef GIRG_HAVE_BMI2
    if (bmi2_available())
        return bmi2_encode(coords, dimension, level);
#endif
    return portable_encode(coords, dimension, level);
}

void decode(std::uint64_t code, unsigned dimension, unsigned level, std::uint64_t* out) noexcept {
#ifdef GIRG_HAVE_BMI2
    if (bmi2_available()) {
        bmi2_decode(code, dimension, level, out);
        return;
    }
#endif
    portable_decode(code, dimension, level, out);
}

} // namespace morton

namespace {

void check_budget(std::size_t dimension, unsigned level) {
    if (dimension < 1 || dimension > kMaxDimension)
        throw std::invalid_argument("Morton dimension must be in [1, 5]");
    if (dimension * level > kMortonBits)
        throw std::invalid_argument("Morton code of " + std::to_string(dimension) + " x " + std::to_string(level) +
                                    " bits exceeds the 62-bit budget");
}

} // namespace

std::uint64_t morton_encode(std::span<const std::uint64_t> coords, unsigned level) {
    check_budget(coords.size(), level);
    for (const auto x : coords)
        if (level < 64 && (x >> level) != 0)
            throw std::invalid_argument("coordinate does not fit into the level's bit count");
    return morton::encode(coords.data(), static_cast<unsigned>(coords.size()), level);
}

void morton_decode(std::uint64_t code, unsigned level, std::span<std::uint64_t> out) {
    check_budget(out.size(), level);
    const unsigned bits = static_cast<unsigned>(out.size()) * level;
    if (bits < 64 && (code >> bits) != 0)
        throw std::invalid_argument("Morton code out of range for level");
    morton::decode(code, static_cast<unsigned>(out.size()), level, out.data());
}

} // namespace girg
