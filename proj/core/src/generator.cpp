#include <girg/generator.hpp>

#include <girg/cell_pair_engine.hpp>
#include <girg/random.hpp>
#include <girg/sampler.hpp>

#include <cassert>
#include <chrono>

namespace girg {

namespace {

class Stopwatch {
public:
    double lap() {
        const auto now = std::chrono::steady_clock::now();
        const double seconds = std::chrono::duration<double>(now - start_).count();
        start_ = now;
        return seconds;
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

} // namespace

GirgGenerator::GirgGenerator(WeightSet weights, PositionSet positions, double constant, double temperature,
                             unsigned threads)
    : weights_(std::move(weights)),
      positions_(std::move(positions)),
      kernel_(constant, temperature, positions_.dimension(), weights_.total()) {
    if (weights_.size() != positions_.size())
        throw ParameterError("weights and positions disagree on the vertex count");
    buckets_ = WeightBuckets(weights_.values());
    schedule_ = compute_levels(buckets_, weights_.total(), constant, temperature, positions_.dimension(),
                               depth_cap(weights_.size(), positions_.dimension()));
    index_ = SpatialIndex(weights_, positions_, buckets_, schedule_, threads);
}

std::uint64_t GirgGenerator::sample(std::uint64_t edge_seed, EdgeSink& sink, unsigned threads) const {
    return sample_girg_edges(index_, schedule_, buckets_, kernel_, edge_seed, sink, threads);
}

class HrgEdgeModel {
public:
    explicit HrgEdgeModel(const HrgGenerator& generator)
        : generator_(generator),
          slots_(generator.slots_.data()),
          cosh_radius_(generator.coords_.cosh_disk_radius()),
          filter_(generator.filter_ ? &*generator.filter_ : nullptr) {}

    double cosh_distance(std::size_t s, std::size_t t) const noexcept {
        const HrgGenerator::Slot& a = slots_[s];
        const HrgGenerator::Slot& b = slots_[t];
        return hrg_cosh_distance(a.exp_r, a.exp_neg_r, a.sinh_r, a.angle, b.exp_r, b.exp_neg_r, b.sinh_r, b.angle);
    }

    bool neighbor_edge(std::size_t s, std::size_t t, CounterRng& rng) const noexcept {
        const double cosh_d = cosh_distance(s, t);
        if (!filter_)
            return cosh_d < cosh_radius_;
        return filter_->trial(rng.uniform(), cosh_d);
    }

    bool samples_distant_pairs() const noexcept { return filter_ != nullptr; }

    double distant_bound(unsigned i, unsigned j, double min_distance) const {
        return generator_.distant_bound(i, j, min_distance);
    }

    bool accept_distant(std::size_t s, std::size_t t, double bound, double u) const noexcept {
        const double cosh_d = cosh_distance(s, t);
        assert(hrg_binomial_probability(cosh_d, generator_.coords_.disk_radius(), generator_.temperature_) <= bound);
        return filter_->trial(u * bound, cosh_d);
    }

private:
    const HrgGenerator& generator_;
    const HrgGenerator::Slot* slots_;
    double cosh_radius_;
    const DistanceFilter* filter_;
};

HrgGenerator::HrgGenerator(HrgCoordinates coords, double temperature, unsigned threads)
    : coords_(std::move(coords)), temperature_(temperature) {
    if (!(temperature >= 0.0 && temperature < 1.0))
        throw ParameterError("temperature must be in [0, 1)");
    if (coords_.size() == 0)
        throw ParameterError("n must be at least 1");
    const MappedGirg mapped = hrg_to_girg_map(coords_);
    layout_ = compute_hrg_layout(coords_, mapped.weights, depth_cap(coords_.size(), 1));
    index_ = SpatialIndex(mapped.weights, mapped.positions, layout_.buckets, layout_.schedule, threads);
    slots_.resize(coords_.size());
    for (std::size_t s = 0; s < slots_.size(); ++s) {
        const std::uint64_t v = index_.vertex(s);
        slots_[s] = {coords_.exp_r(v), coords_.exp_neg_r(v), coords_.sinh_r(v), coords_.angle(v)};
    }
    if (temperature_ > 0.0)
        filter_.emplace(coords_.disk_radius(), temperature_);
}

double HrgGenerator::distant_bound(unsigned i, unsigned j, double min_distance) const {
    if (temperature_ == 0.0)
        return 0.0;
    const double lower = hrg_cosh_lower_bound(layout_, i, j, 2.0 * std::numbers::pi * min_distance);
    const double bound = hrg_binomial_probability(lower, coords_.disk_radius(), temperature_) * (1.0 + 1e-9);
    return std::min(1.0, bound);
}

std::uint64_t HrgGenerator::sample(std::uint64_t edge_seed, EdgeSink& sink, unsigned threads) const {
    const HrgEdgeModel model(*this);
    return CellPairEngine<HrgEdgeModel>(model, index_, layout_.schedule, edge_seed).run(sink, threads);
}

GenerationResult estimate_girg(const GirgParams& params, unsigned threads) {
    params.validate();
    GenerationResult result;
    result.n = params.n;
    Stopwatch clock;
    const WeightSet weights = sample_weights(params.n, params.ple, derive_seed(params.seed, Stream::weights), threads);
    result.timings.weights = clock.lap();
    if (params.constant) {
        result.parameter = *params.constant;
    } else {
        result.estimate = estimate_c(*params.degree_target, weights.values(), params.dimension, params.temperature,
                                     threads);
        result.parameter = result.estimate->constant;
    }
    result.timings.binary = clock.lap();
    return result;
}

GenerationResult generate_girg(const GirgParams& params, EdgeSink& sink, unsigned threads,
                               const ParameterHook& on_parameter) {
    params.validate();
    GenerationResult result;
    result.n = params.n;
    Stopwatch clock;
    WeightSet weights = sample_weights(params.n, params.ple, derive_seed(params.seed, Stream::weights), threads);
    result.timings.weights = clock.lap();
    PositionSet positions =
        sample_positions(params.n, params.dimension, derive_seed(params.seed, Stream::positions), threads);
    result.timings.positions = clock.lap();
    if (params.constant) {
        result.parameter = *params.constant;
    } else {
        result.estimate = estimate_c(*params.degree_target, weights.values(), params.dimension, params.temperature,
                                     threads);
        result.parameter = result.estimate->constant;
    }
    result.timings.binary = clock.lap();
    if (on_parameter)
        on_parameter(result.parameter);
    clock.lap();
    const GirgGenerator generator(std::move(weights), std::move(positions), result.parameter, params.temperature,
                                  threads);
    result.timings.preprocessing = clock.lap();
    result.edges = generator.sample(derive_seed(params.seed, Stream::edges), sink, threads);
    result.timings.edges = clock.lap();
    return result;
}

GenerationResult estimate_hrg(const HrgParams& params, unsigned threads) {
    params.validate();
    GenerationResult result;
    result.n = params.n;
    Stopwatch clock;
    if (params.C) {
        result.parameter = hrg_radius(params.n, *params.C);
    } else {
        RadiusEstimateOptions options;
        options.threads = threads;
        result.radius_estimate = estimate_R(params.n, params.alpha, params.temperature, *params.degree_target, options);
        result.parameter = result.radius_estimate->radius;
    }
    result.timings.binary = clock.lap();
    return result;
}

GenerationResult generate_hrg(const HrgParams& params, EdgeSink& sink, unsigned threads,
                              const ParameterHook& on_parameter) {
    GenerationResult result = estimate_hrg(params, threads);
    const double radius = result.parameter;
    if (on_parameter)
        on_parameter(radius);
    Stopwatch clock;
    std::vector<double> radii = sample_hrg_radii(params.n, params.alpha, radius, params.seed, threads);
    result.timings.weights = clock.lap();
    std::vector<double> angles = sample_hrg_angles(params.n, params.seed, threads);
    result.timings.positions = clock.lap();
    const HrgGenerator generator(HrgCoordinates(radius, std::move(radii), std::move(angles)), params.temperature,
                                 threads);
    result.timings.preprocessing = clock.lap();
    result.edges = generator.sample(derive_seed(params.seed, Stream::edges), sink, threads);
    result.timings.edges = clock.lap();
    return result;
}

} // namespace girg
