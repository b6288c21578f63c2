#include <girg/sampler.hpp>

#include <stdexcept>

namespace girg {

std::uint64_t geometric_jump(double p, double u) {
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("geometric jump probability must lie in (0, 1]");
    if (!(u >= 0.0 && u < 1.0))
        throw std::invalid_argument("geometric jump uniform must lie in [0, 1)");
    return GeometricSkipper(p)(u);
}

std::uint64_t sample_girg_edges(const SpatialIndex& index, const LevelSchedule& schedule, const WeightBuckets& buckets,
                                const ConnectionKernel& kernel, std::uint64_t edge_seed, EdgeSink& sink,
                                unsigned threads) {
    const GirgEdgeModel model(index, buckets, kernel);
    return CellPairEngine<GirgEdgeModel>(model, index, schedule, edge_seed).run(sink, threads);
}

} // namespace girg
