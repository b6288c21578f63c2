#include <girg/model.hpp>
#include <girg/parallel.hpp>
#include <girg/random.hpp>

#include <algorithm>
#include <numeric>

namespace girg {

void GirgParams::validate() const {
    if (n < 1)
        throw ParameterError("n must be at least 1");
    if (dimension < 1 || dimension > kMaxDimension)
        throw ParameterError("dimension must be in [1, " + std::to_string(kMaxDimension) + "]");
    if (!(ple > 2.0))
        throw ParameterError("power-law exponent must be > 2");
    if (!(temperature >= 0.0 && temperature < 1.0))
        throw ParameterError("temperature must be in [0, 1)");
    if (degree_target.has_value() == constant.has_value())
        throw ParameterError("exactly one of degree target and constant must be given");
    if (degree_target && !(*degree_target > 0.0))
        throw ParameterError("degree target must be positive");
    if (constant && !(*constant > 0.0))
        throw ParameterError("constant must be positive");
}

WeightSet::WeightSet(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty())
        throw ParameterError("weight set must not be empty");
    min_ = weights_.front();
    max_ = weights_.front();
    double total = 0.0;
    double sum_sq = 0.0;
    for (const double w : weights_) {
        if (!(w > 0.0) || !std::isfinite(w))
            throw ParameterError("weights must be positive and finite");
        min_ = std::min(min_, w);
        max_ = std::max(max_, w);
        total += w;
        sum_sq += w * w;
    }
    total_ = total;
    sum_sq_over_total_ = sum_sq / total;
}

PositionSet::PositionSet(unsigned dimension, std::vector<double> coords)
    : dimension_(dimension), coords_(std::move(coords)) {
    if (dimension_ < 1 || dimension_ > kMaxDimension)
        throw ParameterError("dimension must be in [1, " + std::to_string(kMaxDimension) + "]");
    if (coords_.size() % dimension_ != 0)
        throw ParameterError("coordinate count is not a multiple of the dimension");
    for (const double x : coords_)
        if (!(x >= 0.0 && x < 1.0))
            throw ParameterError("coordinates must lie in [0, 1)");
}

WeightSet sample_weights(std::uint64_t n, double ple, std::uint64_t seed, unsigned threads) {
    if (n < 1)
        throw ParameterError("n must be at least 1");
    if (!(ple > 2.0))
        throw ParameterError("power-law exponent must be > 2");
    std::vector<double> weights(n);
    const auto workers = static_cast<int>(resolve_threads(threads));
#pragma omp parallel for schedule(static) num_threads(workers)
    for (std::int64_t v = 0; v < static_cast<std::int64_t>(n); ++v)
        weights[v] = pareto_weight(CounterRng::uniform_at(seed, static_cast<std::uint64_t>(v)), ple);
    return WeightSet(std::move(weights));
}

PositionSet sample_positions(std::uint64_t n, unsigned dimension, std::uint64_t seed, unsigned threads) {
    if (n < 1)
        throw ParameterError("n must be at least 1");
    if (dimension < 1 || dimension > kMaxDimension)
        throw ParameterError("dimension must be in [1, " + std::to_string(kMaxDimension) + "]");
    std::vector<double> coords(n * dimension);
    const auto workers = static_cast<int>(resolve_threads(threads));
#pragma omp parallel for schedule(static) num_threads(workers)
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(coords.size()); ++k)
        coords[k] = CounterRng::uniform_at(seed, static_cast<std::uint64_t>(k));
    return PositionSet(dimension, std::move(coords));
}

ConnectionKernel::ConnectionKernel(double constant, double temperature, unsigned dimension, double total_weight)
    : c_(constant), temperature_(temperature), dimension_(dimension), total_weight_(total_weight),
      c_pow_dim_(pow_dim(constant, dimension)), inv_temperature_(temperature > 0.0 ? 1.0 / temperature : 0.0) {
    if (!(temperature >= 0.0 && temperature < 1.0))
        throw ParameterError("temperature must be in [0, 1)");
    if (dimension < 1 || dimension > kMaxDimension)
        throw ParameterError("dimension must be in [1, " + std::to_string(kMaxDimension) + "]");
    if (!(constant > 0.0))
        throw ParameterError("constant must be positive");
    if (!(total_weight > 0.0))
        throw ParameterError("total weight must be positive");
}

double ConnectionKernel::saturation_length(double wu, double wv) const noexcept {
    const double scale = threshold() ? c_pow_dim_ : std::pow(c_, temperature_);
    return std::pow(scale * (wu * wv / total_weight_), 1.0 / dimension_);
}

double edge_probability(double wu, double wv, double total_weight, double dist, double constant,
                        double temperature, unsigned dimension) {
    return ConnectionKernel(constant, temperature, dimension, total_weight).probability(wu, wv, dist);
}

} // namespace girg
