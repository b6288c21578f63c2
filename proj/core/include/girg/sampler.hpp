#pragma once

#include <girg/cell_pair_engine.hpp>
#include <girg/edge_sink.hpp>
#include <girg/model.hpp>
#include <girg/spatial_index.hpp>

#include <algorithm>
#include <cassert>
#include <cstdint>

namespace girg {

/// GIRG connection rule expressed over index slots, for CellPairEngine.
class GirgEdgeModel {
public:
    GirgEdgeModel(const SpatialIndex& index, const WeightBuckets& buckets, const ConnectionKernel& kernel)
        : index_(index), buckets_(buckets), kernel_(kernel) {}

    bool neighbor_edge(std::size_t s, std::size_t t, CounterRng& rng) const noexcept {
        const double dist = torus_distance(index_.position(s), index_.position(t));
        if (kernel_.threshold())
            return kernel_.threshold_edge(index_.weight(s), index_.weight(t), dist);
        return rng.uniform() < kernel_.binomial_probability(index_.weight(s), index_.weight(t), dist);
    }

    bool samples_distant_pairs() const noexcept { return !kernel_.threshold(); }

    double distant_bound(unsigned i, unsigned j, double min_distance) const noexcept {
        const double bound = kernel_.binomial_probability(buckets_.max_weight(i), buckets_.max_weight(j), min_distance);
        return std::min(1.0, bound * (1.0 + 1e-12));
    }

    bool accept_distant(std::size_t s, std::size_t t, double bound, double u) const noexcept {
        const double dist = torus_distance(index_.position(s), index_.position(t));
        const double p = kernel_.binomial_probability(index_.weight(s), index_.weight(t), dist);
        assert(p <= bound);
        return u * bound < p;
    }

private:
    const SpatialIndex& index_;
    const WeightBuckets& buckets_;
    const ConnectionKernel& kernel_;
};

/// Samples all GIRG edges from a prepared index; returns the number of edges emitted.
std::uint64_t sample_girg_edges(const SpatialIndex& index, const LevelSchedule& schedule, const WeightBuckets& buckets,
                                const ConnectionKernel& kernel, std::uint64_t edge_seed, EdgeSink& sink,
                                unsigned threads = 0);

} // namespace girg
