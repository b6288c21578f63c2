#pragma once

#include <girg/edge_sink.hpp>
#include <girg/model.hpp>
#include <girg/random.hpp>
#include <girg/spatial_index.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

namespace girg {

/// Parameters of a hyperbolic random graph. Exactly one of `C` and
/// `degree_target` is set; the disk radius is R = 2 ln(n) + C.
struct HrgParams {
    std::uint64_t n = 0;
    double alpha = 0.75;
    double temperature = 0.0;
    std::optional<double> C;
    std::optional<double> degree_target;
    std::uint64_t seed = 0;

    void validate() const;
    double ple() const noexcept { return 2.0 * alpha + 1.0; }
};

inline double hrg_radius(std::uint64_t n, double C) { return 2.0 * std::log(static_cast<double>(n)) + C; }

/// Throws ParameterError unless R > 0 and alpha R, R stay below the range where cosh overflows.
void validate_disk(double alpha, double radius);

/// cosh of the hyperbolic distance from cached per-point values, written as
/// cosh(r_u - r_v) + 2 sinh(r_u) sinh(r_v) sin^2(delta / 2), which avoids the
/// cancellation of the textbook form for nearby points. delta is the principal
/// angle difference in [0, pi].
inline double hrg_cosh_distance(double exp_u, double exp_neg_u, double sinh_u, double angle_u, double exp_v,
                                double exp_neg_v, double sinh_v, double angle_v) noexcept {
    double delta = std::abs(angle_u - angle_v);
    if (delta > std::numbers::pi)
        delta = 2.0 * std::numbers::pi - delta;
    const double half = std::sin(0.5 * delta);
    return 0.5 * (exp_u * exp_neg_v + exp_neg_u * exp_v) + 2.0 * (sinh_u * sinh_v) * half * half;
}

/// Polar coordinates in the hyperbolic disk of radius R with per-vertex
/// caches of cosh r, sinh r, e^r and e^-r.
class HrgCoordinates {
public:
    HrgCoordinates() = default;
    /// Radii must lie in [0, R), angles in [0, 2 pi).
    HrgCoordinates(double radius, std::vector<double> radii, std::vector<double> angles);

    std::size_t size() const noexcept { return radii_.size(); }
    double disk_radius() const noexcept { return disk_radius_; }
    double cosh_disk_radius() const noexcept { return cosh_disk_radius_; }

    double radius(std::size_t v) const noexcept { return radii_[v]; }
    double angle(std::size_t v) const noexcept { return angles_[v]; }
    double cosh_r(std::size_t v) const noexcept { return cosh_[v]; }
    double sinh_r(std::size_t v) const noexcept { return sinh_[v]; }
    double exp_r(std::size_t v) const noexcept { return exp_[v]; }
    double exp_neg_r(std::size_t v) const noexcept { return exp_neg_[v]; }
    std::span<const double> radii() const noexcept { return radii_; }
    std::span<const double> angles() const noexcept { return angles_; }

    double cosh_distance(std::size_t u, std::size_t v) const noexcept {
        return hrg_cosh_distance(exp_[u], exp_neg_[u], sinh_[u], angles_[u], exp_[v], exp_neg_[v], sinh_[v],
                                 angles_[v]);
    }

private:
    double disk_radius_ = 0.0;
    double cosh_disk_radius_ = 1.0;
    std::vector<double> radii_;
    std::vector<double> angles_;
    std::vector<double> cosh_;
    std::vector<double> sinh_;
    std::vector<double> exp_;
    std::vector<double> exp_neg_;
};

/// Inverse CDF of the radial density alpha sinh(alpha r) / (cosh(alpha R) - 1).
inline double hrg_radius_quantile(double u, double alpha, double radius) noexcept {
    return std::acosh(1.0 + u * (std::cosh(alpha * radius) - 1.0)) / alpha;
}

/// Radii and angles drawn from the streams derived from the master seed.
HrgCoordinates sample_hrg_coordinates(std::uint64_t n, double alpha, double radius, std::uint64_t seed,
                                      unsigned threads = 0);
std::vector<double> sample_hrg_radii(std::uint64_t n, double alpha, double radius, std::uint64_t seed,
                                     unsigned threads = 0);
std::vector<double> sample_hrg_angles(std::uint64_t n, std::uint64_t seed, unsigned threads = 0);

/// p_T(d) = 1 / (exp((d - R) / (2T)) + 1) evaluated from cosh(d), T > 0.
inline double hrg_binomial_probability(double cosh_d, double radius, double temperature) noexcept {
    const double d = std::acosh(std::max(1.0, cosh_d));
    return 1.0 / (std::exp((d - radius) / (2.0 * temperature)) + 1.0);
}

/// Threshold rule (T = 0, edge iff cosh_d < cosh R) or p_T.
double hrg_connection_prob(double cosh_d, double radius, double temperature);

/// Precomputed cosh(p_T^-1(x)) at k equidistant probability levels x_i = i / (k - 1).
class DistanceFilter {
public:
    enum class Decision { edge, no_edge, evaluate };
    static constexpr unsigned kDefaultLevels = 100;

    DistanceFilter() = default;
    /// Requires T > 0 and k >= 2.
    DistanceFilter(double radius, double temperature, unsigned levels = kDefaultLevels);

    unsigned levels() const noexcept { return static_cast<unsigned>(bounds_.size()); }
    /// cosh(p_T^-1(x_i)); +inf for x = 0, -inf where no distance reaches probability x.
    std::span<const double> stored() const noexcept { return bounds_; }

    /// Classifies the trial u < p_T(d) for u in [0, 1) without evaluating p_T where possible.
    Decision decide(double u, double cosh_d) const noexcept {
        auto level = std::min(static_cast<std::size_t>(u * scale_), levels_.size() - 2);
        while (level > 0 && u < levels_[level])
            --level;
        while (u >= levels_[level + 1])
            ++level;
        if (cosh_d <= bounds_[level + 1] * (1.0 - kMargin))
            return Decision::edge;
        if (cosh_d >= bounds_[level] * (1.0 + kMargin))
            return Decision::no_edge;
        return Decision::evaluate;
    }

    /// decide() with the exact fallback; always equals u < p_T(d).
    bool trial(double u, double cosh_d) const noexcept {
        switch (decide(u, cosh_d)) {
        case Decision::edge:
            return true;
        case Decision::no_edge:
            return false;
        default:
            return u < hrg_binomial_probability(cosh_d, radius_, temperature_);
        }
    }

private:
    static constexpr double kMargin = 1e-10;

    double radius_ = 0.0;
    double temperature_ = 0.0;
    double scale_ = 0.0;
    std::vector<double> levels_;
    std::vector<double> bounds_;
};

/// HRG to GIRG mapping: w_v = e^((R - r_v) / 2), x_v = theta_v / (2 pi), d = 1.
struct MappedGirg {
    WeightSet weights;
    PositionSet positions;
};

MappedGirg hrg_to_girg_map(const HrgCoordinates& coords);

struct RadiusEstimate {
    double radius = 0.0;
    double C = 0.0;
    double expected_degree = 0.0;
    unsigned iterations = 0;
};

struct RadiusEstimateOptions {
    std::uint64_t samples = 1'000'000;
    /// Index of the first quasi-random point; disjoint offsets give independent estimates.
    std::uint64_t offset = 0;
    double tolerance = 0.01;
    unsigned threads = 0;
};

/// Expected average degree of an HRG with the given disk radius, averaged
/// over a fixed quasi-random sample of radius pairs drawn from the radial law
/// (the angle is integrated exactly for T = 0 and by importance sampling for T > 0).
double hrg_expected_degree(std::uint64_t n, double alpha, double temperature, double radius,
                           const RadiusEstimateOptions& options = {});

/// Bisection over C until the estimated degree is within the relative tolerance of the target.
RadiusEstimate estimate_R(std::uint64_t n, double alpha, double temperature, double target_degree,
                          const RadiusEstimateOptions& options = {});

/// Bucket and level data of an HRG mapped onto the GIRG machinery.
struct HrgLayout {
    WeightBuckets buckets;
    LevelSchedule schedule;
    std::vector<double> min_radius;  // per bucket
    std::vector<double> max_radius;
};

/// Lower bound on cosh of the distance between points of buckets i and j at
/// angular distance at least phi.
double hrg_cosh_lower_bound(const HrgLayout& layout, unsigned i, unsigned j, double phi);

/// Comparison levels by scanning levels l = 1, 2, ... while points of the two
/// buckets in non-neighboring level-l cells are provably farther apart than R.
HrgLayout compute_hrg_layout(const HrgCoordinates& coords, const WeightSet& weights, unsigned cap);

} // namespace girg
