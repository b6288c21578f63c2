#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace girg {

inline constexpr unsigned kMaxDimension = 5;

class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Parameters of a GIRG. Exactly one of `degree_target` and `constant` is set.
struct GirgParams {
    std::uint64_t n = 0;
    unsigned dimension = 1;
    double ple = 2.5;          // power-law exponent beta
    double temperature = 0.0;  // T in [0,1); 0 selects the threshold variant
    std::optional<double> degree_target;
    std::optional<double> constant;
    std::uint64_t seed = 0;

    /// Throws ParameterError naming the first violated constraint.
    void validate() const;
};

class WeightSet {
public:
    WeightSet() = default;
    /// Accepts any positive weights (user-supplied weights need not follow a power law).
    explicit WeightSet(std::vector<double> weights);

    std::size_t size() const noexcept { return weights_.size(); }
    bool empty() const noexcept { return weights_.empty(); }
    double operator[](std::size_t v) const noexcept { return weights_[v]; }
    std::span<const double> values() const noexcept { return weights_; }

    double total() const noexcept { return total_; }
    double sum_sq_over_total() const noexcept { return sum_sq_over_total_; }
    double min() const noexcept { return min_; }
    double max() const noexcept { return max_; }

private:
    std::vector<double> weights_;
    double total_ = 0.0;
    double sum_sq_over_total_ = 0.0;
    double min_ = 0.0;
    double max_ = 0.0;
};

/// n points on the d-dimensional unit torus, stored point-major.
class PositionSet {
public:
    PositionSet() = default;
    PositionSet(unsigned dimension, std::vector<double> coords);

    std::size_t size() const noexcept { return dimension_ ? coords_.size() / dimension_ : 0; }
    unsigned dimension() const noexcept { return dimension_; }
    std::span<const double> point(std::size_t v) const noexcept {
        return {coords_.data() + v * dimension_, dimension_};
    }
    std::span<const double> coords() const noexcept { return coords_; }

private:
    unsigned dimension_ = 0;
    std::vector<double> coords_;
};

/// Inverse transform of the Pareto law P(w >= x) = x^(1-beta), x >= 1.
inline double pareto_weight(double u, double ple) { return std::pow(1.0 - u, 1.0 / (1.0 - ple)); }

WeightSet sample_weights(std::uint64_t n, double ple, std::uint64_t seed, unsigned threads = 0);
PositionSet sample_positions(std::uint64_t n, unsigned dimension, std::uint64_t seed, unsigned threads = 0);

/// L-infinity distance on the torus.
inline double torus_distance(std::span<const double> x, std::span<const double> y) noexcept {
    double result = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double diff = std::abs(x[i] - y[i]);
        const double wrapped = std::min(diff, 1.0 - diff);
        result = std::max(result, wrapped);
    }
    return result;
}

inline double pow_dim(double x, unsigned dimension) noexcept {
    double result = x;
    for (unsigned i = 1; i < dimension; ++i)
        result *= x;
    return result;
}

/// Connection rule for fixed (c, T, d, W). Every code path that decides GIRG
/// edges (sampler and brute-force oracle) goes through this type, so their
/// floating-point decisions coincide bit for bit.
class ConnectionKernel {
public:
    ConnectionKernel(double constant, double temperature, unsigned dimension, double total_weight);

    double constant() const noexcept { return c_; }
    double temperature() const noexcept { return temperature_; }
    unsigned dimension() const noexcept { return dimension_; }
    double total_weight() const noexcept { return total_weight_; }
    bool threshold() const noexcept { return temperature_ == 0.0; }

    /// T = 0: dist <= c (w_u w_v / W)^(1/d), evaluated as dist^d <= c^d (w_u w_v / W).
    bool threshold_edge(double wu, double wv, double dist) const noexcept {
        return pow_dim(dist, dimension_) <= c_pow_dim_ * (wu * wv / total_weight_);
    }

    /// min{1, c ((w_u w_v / W) / dist^d)^(1/T)}; coincident points connect with probability 1.
    double binomial_probability(double wu, double wv, double dist) const noexcept {
        if (dist == 0.0)
            return 1.0;
        const double ratio = (wu * wv / total_weight_) / pow_dim(dist, dimension_);
        return std::min(1.0, c_ * std::pow(ratio, inv_temperature_));
    }

    double probability(double wu, double wv, double dist) const noexcept {
        if (threshold())
            return threshold_edge(wu, wv, dist) ? 1.0 : 0.0;
        return binomial_probability(wu, wv, dist);
    }

    /// Distance up to which pairs with these weights are edges (T = 0) or
    /// connect with probability 1 (T > 0).
    double saturation_length(double wu, double wv) const noexcept;

private:
    double c_;
    double temperature_;
    unsigned dimension_;
    double total_weight_;
    double c_pow_dim_;
    double inv_temperature_;
};

/// Throws ParameterError for T outside [0,1).
double edge_probability(double wu, double wv, double total_weight, double dist, double constant,
                        double temperature, unsigned dimension);

} // namespace girg
