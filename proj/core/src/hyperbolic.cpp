#include <girg/hyperbolic.hpp>

#include <girg/parallel.hpp>

#include <limits>
#include <string>

namespace girg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double below(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }

void validate_hrg_shape(std::uint64_t n, double alpha, double temperature) {
    if (n < 1)
        throw ParameterError("n must be at least 1");
    if (!(alpha > 0.5))
        throw ParameterError("alpha must be > 1/2");
    if (!(temperature >= 0.0 && temperature < 1.0))
        throw ParameterError("temperature must be in [0, 1)");
}

} // namespace

void HrgParams::validate() const {
    validate_hrg_shape(n, alpha, temperature);
    if (C.has_value() == degree_target.has_value())
        throw ParameterError("exactly one of C and degree target must be given");
    if (C) {
        if (!std::isfinite(*C))
            throw ParameterError("C must be finite");
        validate_disk(alpha, hrg_radius(n, *C));
    }
    if (degree_target && !(*degree_target > 0.0))
        throw ParameterError("degree target must be positive");
}

void validate_disk(double alpha, double radius) {
    if (!(radius > 0.0))
        throw ParameterError("disk radius R = 2 ln n + C must be positive");
    if (!(alpha * radius < 700.0 && radius < 350.0))
        throw ParameterError("disk radius too large for double precision (need alpha R < 700, R < 350)");
}

HrgCoordinates::HrgCoordinates(double radius, std::vector<double> radii, std::vector<double> angles)
    : disk_radius_(radius), cosh_disk_radius_(std::cosh(radius)), radii_(std::move(radii)), angles_(std::move(angles)) {
    if (!(radius > 0.0 && radius < 350.0))
        throw ParameterError("disk radius must lie in (0, 350)");
    if (radii_.size() != angles_.size())
        throw ParameterError("radius and angle counts differ");
    const std::size_t n = radii_.size();
    cosh_.resize(n);
    sinh_.resize(n);
    exp_.resize(n);
    exp_neg_.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        const double r = radii_[v];
        if (!(r >= 0.0 && r < radius))
            throw ParameterError("radii must lie in [0, R)");
        if (!(angles_[v] >= 0.0 && angles_[v] < kTwoPi))
            throw ParameterError("angles must lie in [0, 2 pi)");
        cosh_[v] = std::cosh(r);
        sinh_[v] = std::sinh(r);
        exp_[v] = std::exp(r);
        exp_neg_[v] = std::exp(-r);
    }
}

std::vector<double> sample_hrg_radii(std::uint64_t n, double alpha, double radius, std::uint64_t seed,
                                     unsigned threads) {
    validate_hrg_shape(n, alpha, 0.0);
    validate_disk(alpha, radius);
    const std::uint64_t key = derive_seed(seed, Stream::radii);
    const double cosh_scale = std::cosh(alpha * radius) - 1.0;
    const double top = below(radius);
    std::vector<double> radii(n);
#pragma omp parallel for schedule(static) num_threads(static_cast<int>(resolve_threads(threads)))
    for (std::int64_t sv = 0; sv < static_cast<std::int64_t>(n); ++sv) {
        const double u = CounterRng::uniform_at(key, static_cast<std::uint64_t>(sv));
        radii[static_cast<std::size_t>(sv)] = std::min(std::acosh(1.0 + u * cosh_scale) / alpha, top);
    }
    return radii;
}

std::vector<double> sample_hrg_angles(std::uint64_t n, std::uint64_t seed, unsigned threads) {
    if (n < 1)
        throw ParameterError("n must be at least 1");
    const std::uint64_t key = derive_seed(seed, Stream::angles);
    const double top = below(kTwoPi);
    std::vector<double> angles(n);
#pragma omp parallel for schedule(static) num_threads(static_cast<int>(resolve_threads(threads)))
    for (std::int64_t sv = 0; sv < static_cast<std::int64_t>(n); ++sv)
        angles[static_cast<std::size_t>(sv)] =
            std::min(kTwoPi * CounterRng::uniform_at(key, static_cast<std::uint64_t>(sv)), top);
    return angles;
}

HrgCoordinates sample_hrg_coordinates(std::uint64_t n, double alpha, double radius, std::uint64_t seed,
                                      unsigned threads) {
    return HrgCoordinates(radius, sample_hrg_radii(n, alpha, radius, seed, threads),
                          sample_hrg_angles(n, seed, threads));
}

double hrg_connection_prob(double cosh_d, double radius, double temperature) {
    if (temperature == 0.0)
        return cosh_d < std::cosh(radius) ? 1.0 : 0.0;
    if (!(temperature > 0.0 && temperature < 1.0))
        throw ParameterError("temperature must be in [0, 1)");
    return hrg_binomial_probability(cosh_d, radius, temperature);
}

DistanceFilter::DistanceFilter(double radius, double temperature, unsigned levels)
    : radius_(radius), temperature_(temperature), scale_(static_cast<double>(levels - 1)) {
    if (!(temperature > 0.0 && temperature < 1.0))
        throw ParameterError("distance filter requires temperature in (0, 1)");
    if (levels < 2)
        throw ParameterError("distance filter needs at least two levels");
    constexpr double kInf = std::numeric_limits<double>::infinity();
    levels_.resize(levels);
    bounds_.resize(levels);
    for (unsigned i = 0; i < levels; ++i) {
        const double x = static_cast<double>(i) / scale_;
        levels_[i] = x;
        if (i == 0) {
            bounds_[i] = kInf;
        } else if (i + 1 == levels) {
            bounds_[i] = -kInf;
        } else {
            const double distance = radius + 2.0 * temperature * std::log(1.0 / x - 1.0);
            bounds_[i] = distance < 0.0 ? -kInf : std::cosh(distance);
        }
    }
}

MappedGirg hrg_to_girg_map(const HrgCoordinates& coords) {
    const std::size_t n = coords.size();
    const double radius = coords.disk_radius();
    const double top = below(1.0);
    std::vector<double> weights(n);
    std::vector<double> positions(n);
    for (std::size_t v = 0; v < n; ++v) {
        weights[v] = std::exp(0.5 * (radius - coords.radius(v)));
        positions[v] = std::min(coords.angle(v) / kTwoPi, top);
    }
    return {WeightSet(std::move(weights)), PositionSet(1, std::move(positions))};
}

double hrg_expected_degree(std::uint64_t n, double alpha, double temperature, double radius,
                           const RadiusEstimateOptions& options) {
    validate_hrg_shape(n, alpha, temperature);
    validate_disk(alpha, radius);
    if (options.samples == 0)
        throw ParameterError("degree estimation needs at least one sample");

    // Kronecker sequence with the generalized golden ratio for three dimensions.
    constexpr double g = 1.2207440846057594753616853491088319144324890862486;
    constexpr double step[3] = {1.0 / g, 1.0 / (g * g), 1.0 / (g * g * g)};
    constexpr double kLogRange = 40.0;

    const double cosh_scale = std::cosh(alpha * radius) - 1.0;
    const double cosh_radius = std::cosh(radius);
    auto point = [&](std::uint64_t k, int axis) {
        const double x = 0.5 + step[axis] * static_cast<double>(k);
        return x - std::floor(x);
    };

    const double sum = deterministic_sum(
        options.samples,
        [&](std::size_t index) {
            const std::uint64_t k = options.offset + index + 1;
            const double r1 = std::acosh(1.0 + point(k, 0) * cosh_scale) / alpha;
            const double r2 = std::acosh(1.0 + point(k, 1) * cosh_scale) / alpha;
            const double radial = std::cosh(r1 - r2);
            const double cross = 2.0 * std::sinh(r1) * std::sinh(r2);
            if (temperature == 0.0) {
                if (!(radial < cosh_radius))
                    return 0.0;
                // Edge iff sin^2(delta / 2) < z; integrate delta over [0, pi] exactly.
                if (cross == 0.0)
                    return 1.0;
                const double z = (cosh_radius - radial) / cross;
                if (z >= 1.0)
                    return 1.0;
                return 2.0 * std::asin(std::sqrt(z)) / std::numbers::pi;
            }
            const double phi = std::numbers::pi * std::exp(-kLogRange * point(k, 2));
            const double half = std::sin(0.5 * phi);
            const double p = hrg_binomial_probability(radial + cross * half * half, radius, temperature);
            return p * kLogRange * phi / std::numbers::pi;
        },
        options.threads);
    return static_cast<double>(n - 1) * sum / static_cast<double>(options.samples);
}

RadiusEstimate estimate_R(std::uint64_t n, double alpha, double temperature, double target_degree,
                          const RadiusEstimateOptions& options) {
    validate_hrg_shape(n, alpha, temperature);
    if (!(target_degree > 0.0 && target_degree < static_cast<double>(n) - 1.0))
        throw ParameterError("target degree must lie in (0, n - 1)");

    const double log_term = 2.0 * std::log(static_cast<double>(n));
    RadiusEstimate result;
    auto degree_at = [&](double C) {
        ++result.iterations;
        return hrg_expected_degree(n, alpha, temperature, log_term + C, options);
    };
    auto close_enough = [&](double value) { return std::abs(value - target_degree) <= options.tolerance * target_degree; };
    auto finish = [&](double C, double value) {
        result.C = C;
        result.radius = log_term + C;
        result.expected_degree = value;
        return result;
    };
    auto feasible = [&](double C) {
        const double radius = log_term + C;
        return radius > 0.0 && alpha * radius < 700.0 && radius < 350.0;
    };

    double C = 0.0;
    if (!feasible(C))
        throw ParameterError("no feasible disk radius for this n and alpha");
    double value = degree_at(C);
    if (close_enough(value))
        return finish(C, value);

    // Degree decreases in C: step until the target is bracketed by [lo, hi].
    double lo = C;
    double hi = C;
    constexpr double kStep = 2.0;
    constexpr int kMaxSteps = 200;
    int steps = 0;
    if (value > target_degree) {
        while (value > target_degree) {
            lo = hi;
            hi += kStep;
            if (++steps > kMaxSteps || !feasible(hi))
                throw ParameterError("target degree is not reachable");
            value = degree_at(hi);
            if (close_enough(value))
                return finish(hi, value);
        }
    } else {
        while (value < target_degree) {
            hi = lo;
            lo -= kStep;
            if (++steps > kMaxSteps)
                throw ParameterError("target degree is not reachable");
            if (!feasible(lo)) {
                lo = 0.5 * (hi - log_term);  // halfway to R = 0
                if (!feasible(lo) || hi - lo < 1e-9)
                    throw ParameterError("target degree is not reachable");
            }
            value = degree_at(lo);
            if (close_enough(value))
                return finish(lo, value);
        }
    }

    double mid = 0.5 * (lo + hi);
    for (int step = 0; step < 100; ++step) {
        mid = 0.5 * (lo + hi);
        value = degree_at(mid);
        if (close_enough(value))
            break;
        (value > target_degree ? lo : hi) = mid;
    }
    return finish(mid, value);
}

double hrg_cosh_lower_bound(const HrgLayout& layout, unsigned i, unsigned j, double phi) {
    const double ai = layout.min_radius[i];
    const double aj = layout.min_radius[j];
    const double gap = std::max({0.0, ai - layout.max_radius[j], aj - layout.max_radius[i]});
    const double half = std::sin(0.5 * std::min(phi, std::numbers::pi));
    return std::cosh(gap) + 2.0 * std::sinh(ai) * std::sinh(aj) * half * half;
}

HrgLayout compute_hrg_layout(const HrgCoordinates& coords, const WeightSet& weights, unsigned cap) {
    HrgLayout layout;
    layout.buckets = WeightBuckets(weights.values());
    const unsigned count = layout.buckets.count();
    layout.min_radius.assign(count, std::numeric_limits<double>::infinity());
    layout.max_radius.assign(count, 0.0);
    for (std::size_t v = 0; v < coords.size(); ++v) {
        const unsigned b = layout.buckets.bucket_of(v);
        layout.min_radius[b] = std::min(layout.min_radius[b], coords.radius(v));
        layout.max_radius[b] = std::max(layout.max_radius[b], coords.radius(v));
    }

    const double limit = coords.cosh_disk_radius() * (1.0 + 1e-12);
    std::vector<unsigned> levels(static_cast<std::size_t>(count) * count, 0);
    std::vector<bool> occupied(count);
    for (unsigned i = 0; i < count; ++i) {
        occupied[i] = !layout.buckets.empty(i);
        if (!occupied[i])
            continue;
        for (unsigned j = i; j < count; ++j) {
            if (layout.buckets.empty(j))
                continue;
            unsigned cl = 0;
            for (unsigned level = 1; level <= cap; ++level) {
                if (hrg_cosh_lower_bound(layout, i, j, kTwoPi * std::ldexp(1.0, -static_cast<int>(level))) < limit)
                    break;
                cl = level;
            }
            levels[i * count + j] = cl;
            levels[j * count + i] = cl;
        }
    }
    layout.schedule = LevelSchedule(count, std::move(levels), std::move(occupied));
    return layout;
}

} // namespace girg
