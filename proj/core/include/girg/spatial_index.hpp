#pragma once

#include <girg/grid.hpp>
#include <girg/model.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace girg {

/// Vertices grouped into factor-2 weight ranges: bucket i holds weights in
/// [w_min 2^i, w_min 2^(i+1)). Buckets past kMaxBuckets - 1 are merged into
/// the last one.
class WeightBuckets {
public:
    static constexpr unsigned kMaxBuckets = 64;

    WeightBuckets() = default;
    explicit WeightBuckets(std::span<const double> weights);

    unsigned count() const noexcept { return static_cast<unsigned>(sizes_.size()); }
    unsigned bucket_of(std::size_t v) const noexcept { return assignment_[v]; }
    std::span<const std::uint8_t> assignment() const noexcept { return assignment_; }

    std::size_t size(unsigned i) const noexcept { return sizes_[i]; }
    bool empty(unsigned i) const noexcept { return sizes_[i] == 0; }

    double base() const noexcept { return base_; }
    double lower_boundary(unsigned i) const noexcept;
    double upper_boundary(unsigned i) const noexcept;

    /// Largest member weight; the upper boundary for empty buckets.
    double max_weight(unsigned i) const noexcept { return max_weights_[i]; }
    /// Smallest member weight; the lower boundary for empty buckets.
    double min_weight(unsigned i) const noexcept { return min_weights_[i]; }

private:
    double base_ = 1.0;
    std::vector<std::uint8_t> assignment_;
    std::vector<std::size_t> sizes_;
    std::vector<double> max_weights_;
    std::vector<double> min_weights_;
};

inline WeightBuckets build_buckets(std::span<const double> weights) { return WeightBuckets(weights); }

struct BucketPair {
    unsigned i = 0;
    unsigned j = 0;

    friend constexpr bool operator==(const BucketPair&, const BucketPair&) = default;
};

/// Comparison levels CL(i, j), insertion levels I(i) and the per-level lists
/// of bucket pairs handled by neighboring (CL == l) and distant (CL >= l) cell
/// pairs. Lists hold unordered pairs (i <= j) over occupied buckets only.
class LevelSchedule {
public:
    LevelSchedule() = default;
    /// `levels` is the symmetric, row-major bucket_count x bucket_count matrix of CL.
    LevelSchedule(unsigned bucket_count, std::vector<unsigned> levels, std::vector<bool> occupied);

    unsigned bucket_count() const noexcept { return bucket_count_; }
    unsigned comparison_level(unsigned i, unsigned j) const noexcept { return levels_[i * bucket_count_ + j]; }
    unsigned insertion_level(unsigned i) const noexcept { return insertion_levels_[i]; }
    unsigned max_depth() const noexcept { return max_depth_; }
    bool occupied(unsigned i) const noexcept { return occupied_[i]; }

    std::span<const BucketPair> neighbor_pairs(unsigned level) const noexcept;
    std::span<const BucketPair> distant_pairs(unsigned level) const noexcept;

private:
    unsigned bucket_count_ = 0;
    unsigned max_depth_ = 0;
    std::vector<unsigned> levels_;
    std::vector<bool> occupied_;
    std::vector<unsigned> insertion_levels_;
    std::vector<std::vector<BucketPair>> neighbor_pairs_;
    std::vector<std::vector<BucketPair>> distant_pairs_;
};

/// clamp(floor(-log2(length)), 0, cap), corrected so that 2^-CL >= length
/// holds in floating point as well.
unsigned comparison_level_for_length(double length, unsigned cap);

/// GIRG comparison levels: the connection length of a bucket pair is
/// c (w_i w_j / W)^(1/d) for T = 0 and (c^T w_i w_j / W)^(1/d) for T > 0,
/// evaluated at the buckets' maximum weights.
LevelSchedule compute_levels(const WeightBuckets& buckets, double total_weight, double constant, double temperature,
                             unsigned dimension, unsigned cap);

inline std::span<const BucketPair> buckets_for_cell_pair(const LevelSchedule& schedule, unsigned level,
                                                         bool is_neighbor) noexcept {
    return is_neighbor ? schedule.neighbor_pairs(level) : schedule.distant_pairs(level);
}

/// Half-open range of slots in the index's sorted vertex order.
struct SlotRange {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t size() const noexcept { return end - begin; }
    bool empty() const noexcept { return begin == end; }
};

/// Vertices sorted by (bucket, Morton code at the bucket's insertion level,
/// vertex id) with per-cell prefix sums, so that V_i^A is one contiguous slot
/// range for every cell A at or above level I(i). Weights and coordinates are
/// copied into slot order.
class SpatialIndex {
public:
    SpatialIndex() = default;
    SpatialIndex(const WeightSet& weights, const PositionSet& positions, const WeightBuckets& buckets,
                 const LevelSchedule& schedule, unsigned threads = 0);

    unsigned dimension() const noexcept { return dimension_; }
    std::size_t size() const noexcept { return ids_.size(); }
    unsigned bucket_count() const noexcept { return static_cast<unsigned>(insertion_levels_.size()); }
    unsigned insertion_level(unsigned i) const noexcept { return insertion_levels_[i]; }

    /// Throws std::invalid_argument if the cell lies below the bucket's insertion level.
    SlotRange vertices_in(unsigned bucket, CellId cell) const;

    SlotRange vertices_in_unchecked(unsigned bucket, unsigned level, std::uint64_t code) const noexcept {
        const unsigned shift = (insertion_levels_[bucket] - level) * dimension_;
        const std::size_t* prefix = prefix_.data() + prefix_offsets_[bucket];
        const std::size_t base = bucket_begin_[bucket];
        return {base + prefix[code << shift], base + prefix[(code + 1) << shift]};
    }

    SlotRange bucket_range(unsigned bucket) const noexcept { return {bucket_begin_[bucket], bucket_begin_[bucket + 1]}; }

    std::uint64_t vertex(std::size_t slot) const noexcept { return ids_[slot]; }
    double weight(std::size_t slot) const noexcept { return weights_[slot]; }
    std::span<const double> position(std::size_t slot) const noexcept {
        return {coords_.data() + slot * dimension_, dimension_};
    }
    const double* position_data(std::size_t slot) const noexcept { return coords_.data() + slot * dimension_; }

    std::span<const std::uint64_t> sorted_vertices() const noexcept { return ids_; }
    std::size_t slot_of(std::uint64_t vertex) const noexcept { return slots_[vertex]; }

    /// Prefix sums of bucket i over its level-I(i) cells (2^(d I(i)) + 1 entries).
    std::span<const std::size_t> prefix_sums(unsigned bucket) const noexcept;

    /// Total number of insertion-level cells over all buckets.
    std::size_t cell_count() const noexcept { return prefix_.size() - insertion_levels_.size(); }

private:
    unsigned dimension_ = 0;
    std::vector<unsigned> insertion_levels_;
    std::vector<std::size_t> bucket_begin_;
    std::vector<std::size_t> prefix_offsets_;
    std::vector<std::size_t> prefix_;
    std::vector<std::uint64_t> ids_;
    std::vector<std::size_t> slots_;
    std::vector<double> weights_;
    std::vector<double> coords_;
};

inline SpatialIndex build_index(const WeightSet& weights, const PositionSet& positions, const WeightBuckets& buckets,
                                const LevelSchedule& schedule, unsigned threads = 0) {
    return SpatialIndex(weights, positions, buckets, schedule, threads);
}

} // namespace girg
