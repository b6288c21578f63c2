#include <girg/spatial_index.hpp>

#include <girg/parallel.hpp>
#include <girg/radix_sort.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace girg {

WeightBuckets::WeightBuckets(std::span<const double> weights) {
    if (weights.empty())
        throw std::invalid_argument("cannot bucket an empty weight set");
    base_ = *std::min_element(weights.begin(), weights.end());
    if (!(base_ > 0.0))
        throw std::invalid_argument("weights must be positive");

    assignment_.resize(weights.size());
    unsigned highest = 0;
    for (std::size_t v = 0; v < weights.size(); ++v) {
        const int exponent = std::ilogb(weights[v] / base_);
        const auto bucket = static_cast<unsigned>(std::clamp(exponent, 0, static_cast<int>(kMaxBuckets) - 1));
        assignment_[v] = static_cast<std::uint8_t>(bucket);
        highest = std::max(highest, bucket);
    }

    const unsigned count = highest + 1;
    sizes_.assign(count, 0);
    max_weights_.assign(count, 0.0);
    min_weights_.assign(count, std::numeric_limits<double>::infinity());
    for (std::size_t v = 0; v < weights.size(); ++v) {
        const unsigned b = assignment_[v];
        ++sizes_[b];
        max_weights_[b] = std::max(max_weights_[b], weights[v]);
        min_weights_[b] = std::min(min_weights_[b], weights[v]);
    }
    for (unsigned b = 0; b < count; ++b)
        if (sizes_[b] == 0) {
            max_weights_[b] = upper_boundary(b);
            min_weights_[b] = lower_boundary(b);
        }
}

double WeightBuckets::lower_boundary(unsigned i) const noexcept { return std::ldexp(base_, static_cast<int>(i)); }

double WeightBuckets::upper_boundary(unsigned i) const noexcept {
    if (i + 1 >= kMaxBuckets)
        return std::numeric_limits<double>::infinity();
    return std::ldexp(base_, static_cast<int>(i) + 1);
}

LevelSchedule::LevelSchedule(unsigned bucket_count, std::vector<unsigned> levels, std::vector<bool> occupied)
    : bucket_count_(bucket_count), levels_(std::move(levels)), occupied_(std::move(occupied)) {
    if (levels_.size() != static_cast<std::size_t>(bucket_count) * bucket_count ||
        occupied_.size() != bucket_count)
        throw std::invalid_argument("level matrix does not match the bucket count");
    for (unsigned i = 0; i < bucket_count; ++i)
        for (unsigned j = 0; j < i; ++j)
            if (comparison_level(i, j) != comparison_level(j, i))
                throw std::invalid_argument("comparison levels must be symmetric");

    insertion_levels_.assign(bucket_count, 0);
    for (unsigned i = 0; i < bucket_count; ++i) {
        if (!occupied_[i])
            continue;
        for (unsigned j = 0; j < bucket_count; ++j)
            if (occupied_[j])
                insertion_levels_[i] = std::max(insertion_levels_[i], comparison_level(i, j));
        max_depth_ = std::max(max_depth_, insertion_levels_[i]);
    }

    neighbor_pairs_.resize(max_depth_ + 1);
    distant_pairs_.resize(max_depth_ + 1);
    for (unsigned i = 0; i < bucket_count; ++i) {
        if (!occupied_[i])
            continue;
        for (unsigned j = i; j < bucket_count; ++j) {
            if (!occupied_[j])
                continue;
            const unsigned cl = comparison_level(i, j);
            neighbor_pairs_[cl].push_back({i, j});
            for (unsigned level = 0; level <= cl; ++level)
                distant_pairs_[level].push_back({i, j});
        }
    }
}

std::span<const BucketPair> LevelSchedule::neighbor_pairs(unsigned level) const noexcept {
    if (level >= neighbor_pairs_.size())
        return {};
    return neighbor_pairs_[level];
}

std::span<const BucketPair> LevelSchedule::distant_pairs(unsigned level) const noexcept {
    if (level >= distant_pairs_.size())
        return {};
    return distant_pairs_[level];
}

unsigned comparison_level_for_length(double length, unsigned cap) {
    if (!(length > 0.0))
        return cap;
    if (length >= 1.0)
        return 0;
    unsigned level = static_cast<unsigned>(std::min<double>(std::floor(-std::log2(length)), cap));
    while (level > 0 && std::ldexp(1.0, -static_cast<int>(level)) < length * (1.0 + 1e-9))
        --level;
    return level;
}

LevelSchedule compute_levels(const WeightBuckets& buckets, double total_weight, double constant, double temperature,
                             unsigned dimension, unsigned cap) {
    const unsigned count = buckets.count();
    const double scale = temperature == 0.0 ? 1.0 : std::pow(constant, temperature);
    const double prefactor = temperature == 0.0 ? constant : 1.0;

    std::vector<unsigned> levels(static_cast<std::size_t>(count) * count);
    std::vector<bool> occupied(count);
    for (unsigned i = 0; i < count; ++i) {
        occupied[i] = !buckets.empty(i);
        for (unsigned j = i; j < count; ++j) {
            const double ratio = scale * buckets.max_weight(i) * buckets.max_weight(j) / total_weight;
            const double length = prefactor * std::pow(ratio, 1.0 / dimension);
            const unsigned cl = comparison_level_for_length(length, cap);
            levels[i * count + j] = cl;
            levels[j * count + i] = cl;
        }
    }
    return LevelSchedule(count, std::move(levels), std::move(occupied));
}

SpatialIndex::SpatialIndex(const WeightSet& weights, const PositionSet& positions, const WeightBuckets& buckets,
                           const LevelSchedule& schedule, unsigned threads)
    : dimension_(positions.dimension()) {
    const std::size_t n = weights.size();
    if (positions.size() != n || buckets.assignment().size() != n)
        throw std::invalid_argument("weights, positions and buckets disagree on the vertex count");
    if (schedule.bucket_count() != buckets.count())
        throw std::invalid_argument("level schedule does not match the buckets");

    const unsigned bucket_count = buckets.count();
    insertion_levels_.resize(bucket_count);
    for (unsigned b = 0; b < bucket_count; ++b)
        insertion_levels_[b] = schedule.insertion_level(b);

    const unsigned code_bits = dimension_ * schedule.max_depth();
    const unsigned bucket_bits = static_cast<unsigned>(std::bit_width(bucket_count - 1));
    if (code_bits > kMortonBits || code_bits + bucket_bits > 64)
        throw std::length_error("spatial index keys exceed 64 bits");

    const auto workers = static_cast<int>(resolve_threads(threads));
    std::vector<std::uint64_t> keys(n);
    std::vector<std::uint64_t> ids(n);
#pragma omp parallel for schedule(static) num_threads(workers)
    for (std::int64_t sv = 0; sv < static_cast<std::int64_t>(n); ++sv) {
        const auto v = static_cast<std::size_t>(sv);
        const unsigned b = buckets.bucket_of(v);
        const unsigned level = insertion_levels_[b];
        std::uint64_t grid[kMaxDimension];
        grid_coords_of_point(positions.point(v), level, grid);
        keys[v] = (static_cast<std::uint64_t>(b) << code_bits) | morton::encode(grid, dimension_, level);
        ids[v] = v;
    }
    radix_sort_pairs(keys, ids, code_bits + bucket_bits, threads);

    bucket_begin_.assign(bucket_count + 1, 0);
    for (unsigned b = 0; b < bucket_count; ++b)
        bucket_begin_[b + 1] = bucket_begin_[b] + buckets.size(b);

    prefix_offsets_.resize(bucket_count + 1);
    prefix_offsets_[0] = 0;
    for (unsigned b = 0; b < bucket_count; ++b)
        prefix_offsets_[b + 1] = prefix_offsets_[b] + (std::size_t{1} << (dimension_ * insertion_levels_[b])) + 1;
    prefix_.assign(prefix_offsets_[bucket_count], 0);

    const std::uint64_t code_mask = code_bits == 0 ? 0 : (~std::uint64_t{0} >> (64 - code_bits));
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
    for (int b = 0; b < static_cast<int>(bucket_count); ++b) {
        std::size_t* prefix = prefix_.data() + prefix_offsets_[b];
        const std::size_t cells = prefix_offsets_[b + 1] - prefix_offsets_[b] - 1;
        for (std::size_t s = bucket_begin_[b]; s < bucket_begin_[b + 1]; ++s)
            ++prefix[(keys[s] & code_mask) + 1];
        for (std::size_t c = 0; c < cells; ++c)
            prefix[c + 1] += prefix[c];
    }

    ids_ = std::move(ids);
    slots_.resize(n);
    weights_.resize(n);
    coords_.resize(n * dimension_);
#pragma omp parallel for schedule(static) num_threads(workers)
    for (std::int64_t ss = 0; ss < static_cast<std::int64_t>(n); ++ss) {
        const auto s = static_cast<std::size_t>(ss);
        const std::uint64_t v = ids_[s];
        slots_[v] = s;
        weights_[s] = weights[v];
        const auto point = positions.point(v);
        std::copy(point.begin(), point.end(), coords_.begin() + static_cast<std::ptrdiff_t>(s * dimension_));
    }
}

SlotRange SpatialIndex::vertices_in(unsigned bucket, CellId cell) const {
    if (bucket >= bucket_count())
        throw std::invalid_argument("bucket index out of range");
    if (cell.level > insertion_levels_[bucket])
        throw std::invalid_argument("cell level " + std::to_string(cell.level) +
                                    " lies below the insertion level " +
                                    std::to_string(insertion_levels_[bucket]) + " of bucket " +
                                    std::to_string(bucket));
    if (dimension_ * cell.level < 64 && cell.code >> (dimension_ * cell.level) != 0)
        throw std::invalid_argument("cell code out of range for its level");
    return vertices_in_unchecked(bucket, cell.level, cell.code);
}

std::span<const std::size_t> SpatialIndex::prefix_sums(unsigned bucket) const noexcept {
    return {prefix_.data() + prefix_offsets_[bucket], prefix_offsets_[bucket + 1] - prefix_offsets_[bucket]};
}

} // namespace girg
