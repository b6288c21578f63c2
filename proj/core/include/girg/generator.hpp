#pragma once

#include <girg/degree_estimator.hpp>
#include <girg/edge_sink.hpp>
#include <girg/hyperbolic.hpp>
#include <girg/model.hpp>
#include <girg/spatial_index.hpp>

#include <cstdint>
#include <functional>
#include <optional>

namespace girg {

inline constexpr const char* kVersion = "0.1.0";

/// Wall-clock seconds of the pipeline steps: weights (or radii), positions
/// (or angles), binary search for c (or R), preprocessing (buckets, levels,
/// index) and edge sampling.
struct StepTimings {
    double weights = 0.0;
    double positions = 0.0;
    double binary = 0.0;
    double preprocessing = 0.0;
    double edges = 0.0;

    double total() const noexcept { return weights + positions + binary + preprocessing + edges; }
};

/// GIRG sampler prepared for fixed weights, positions and (c, T).
class GirgGenerator {
public:
    GirgGenerator(WeightSet weights, PositionSet positions, double constant, double temperature,
                  unsigned threads = 0);

    /// Emits all edges to the sink; the edge set depends on the seed only.
    std::uint64_t sample(std::uint64_t edge_seed, EdgeSink& sink, unsigned threads = 0) const;

    const WeightSet& weights() const noexcept { return weights_; }
    const PositionSet& positions() const noexcept { return positions_; }
    const ConnectionKernel& kernel() const noexcept { return kernel_; }
    const WeightBuckets& buckets() const noexcept { return buckets_; }
    const LevelSchedule& schedule() const noexcept { return schedule_; }
    const SpatialIndex& index() const noexcept { return index_; }

private:
    WeightSet weights_;
    PositionSet positions_;
    ConnectionKernel kernel_;
    WeightBuckets buckets_;
    LevelSchedule schedule_;
    SpatialIndex index_;
};

/// HRG sampler prepared for fixed coordinates and temperature.
class HrgGenerator {
public:
    HrgGenerator(HrgCoordinates coords, double temperature, unsigned threads = 0);

    std::uint64_t sample(std::uint64_t edge_seed, EdgeSink& sink, unsigned threads = 0) const;

    const HrgCoordinates& coordinates() const noexcept { return coords_; }
    const HrgLayout& layout() const noexcept { return layout_; }
    const SpatialIndex& index() const noexcept { return index_; }
    double temperature() const noexcept { return temperature_; }

    /// Upper bound on the connection probability of buckets (i, j) for points
    /// at least `min_distance` apart on the unit circle.
    double distant_bound(unsigned i, unsigned j, double min_distance) const;

private:
    struct Slot {
        double exp_r;
        double exp_neg_r;
        double sinh_r;
        double angle;
    };
    friend class HrgEdgeModel;

    HrgCoordinates coords_;
    double temperature_;
    HrgLayout layout_;
    SpatialIndex index_;
    std::vector<Slot> slots_;
    std::optional<DistanceFilter> filter_;
};

struct GenerationResult {
    std::uint64_t n = 0;
    std::uint64_t edges = 0;
    /// c for GIRGs, R for HRGs.
    double parameter = 0.0;
    std::optional<DegreeEstimate> estimate;
    std::optional<RadiusEstimate> radius_estimate;
    StepTimings timings;
};

/// Called with c (GIRG) or R (HRG) once it is fixed, before the first edge reaches the sink.
using ParameterHook = std::function<void(double)>;

/// Full pipeline: weights, positions, c (estimated unless given), index, edges.
GenerationResult generate_girg(const GirgParams& params, EdgeSink& sink, unsigned threads = 0,
                               const ParameterHook& on_parameter = {});

/// Full pipeline: R (estimated unless C is given), radii, angles, index, edges.
GenerationResult generate_hrg(const HrgParams& params, EdgeSink& sink, unsigned threads = 0,
                              const ParameterHook& on_parameter = {});

/// Constant or radius only, without generating edges.
GenerationResult estimate_girg(const GirgParams& params, unsigned threads = 0);
GenerationResult estimate_hrg(const HrgParams& params, unsigned threads = 0);

} // namespace girg
