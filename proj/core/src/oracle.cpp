#include <girg/oracle.hpp>

#include <girg/parallel.hpp>

#include <algorithm>
#include <cstdio>
#include <iterator>
#include <limits>
#include <stdexcept>

namespace girg {

namespace {

void require_uniforms(std::size_t n, double temperature, std::span<const double> uniforms) {
    if (temperature > 0.0 && uniforms.size() != pair_count(n))
        throw std::invalid_argument("binomial brute force needs one uniform per unordered pair");
}

std::uint64_t count_up_to(const std::vector<double>& sorted, double value) {
    return static_cast<std::uint64_t>(std::upper_bound(sorted.begin(), sorted.end(), value) - sorted.begin());
}

} // namespace

std::vector<Edge> brute_force_girg(const WeightSet& weights, const PositionSet& positions, double constant,
                                   double temperature, std::span<const double> uniforms) {
    const std::size_t n = weights.size();
    if (positions.size() != n)
        throw std::invalid_argument("weights and positions disagree on the vertex count");
    require_uniforms(n, temperature, uniforms);
    const ConnectionKernel kernel(constant, temperature, positions.dimension(), weights.total());
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) {
            const double dist = torus_distance(positions.point(u), positions.point(v));
            const bool edge = kernel.threshold()
                                  ? kernel.threshold_edge(weights[u], weights[v], dist)
                                  : uniforms[pair_index(u, v, n)] < kernel.binomial_probability(weights[u], weights[v], dist);
            if (edge)
                edges.push_back({u, v});
        }
    return edges;
}

std::vector<Edge> brute_force_hrg(const HrgCoordinates& coords, double temperature, std::span<const double> uniforms) {
    const std::size_t n = coords.size();
    require_uniforms(n, temperature, uniforms);
    if (!(temperature >= 0.0 && temperature < 1.0))
        throw ParameterError("temperature must be in [0, 1)");
    const double cosh_radius = coords.cosh_disk_radius();
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) {
            const double cosh_d = coords.cosh_distance(u, v);
            const bool edge =
                temperature == 0.0
                    ? cosh_d < cosh_radius
                    : uniforms[pair_index(u, v, n)] <
                          hrg_binomial_probability(cosh_d, coords.disk_radius(), temperature);
            if (edge)
                edges.push_back({u, v});
        }
    return edges;
}

double critical_constant(double wu, double wv, double total_weight, double dist) {
    if (dist == 0.0)
        return 0.0;
    const double a = wu * wv / total_weight;
    constexpr double kInf = std::numeric_limits<double>::infinity();
    double c = dist / a;
    while (!(dist <= c * a))
        c = std::nextafter(c, kInf);
    for (double lower = std::nextafter(c, 0.0); lower > 0.0 && dist <= lower * a; lower = std::nextafter(c, 0.0))
        c = lower;
    return c;
}

CouplingAnalysis::CouplingAnalysis(const HrgCoordinates& coords, unsigned threads) : n_(coords.size()) {
    if (n_ < 2)
        throw ParameterError("coupling analysis needs at least two vertices");
    const MappedGirg mapped = hrg_to_girg_map(coords);
    const double total = mapped.weights.total();
    const double cosh_radius = coords.cosh_disk_radius();
    const int workers = static_cast<int>(resolve_threads(threads));
    constexpr double kInf = std::numeric_limits<double>::infinity();

    auto critical = [&](std::size_t u, std::size_t v) {
        return critical_constant(mapped.weights[u], mapped.weights[v], total,
                                 torus_distance(mapped.positions.point(u), mapped.positions.point(v)));
    };

    double c_sub = kInf;
    double c_super = 0.0;
    std::vector<std::vector<double>> hrg_parts(static_cast<std::size_t>(workers));
#pragma omp parallel num_threads(workers) reduction(min : c_sub) reduction(max : c_super)
    {
        auto& part = hrg_parts[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 16)
        for (std::int64_t su = 0; su < static_cast<std::int64_t>(n_); ++su) {
            const auto u = static_cast<std::size_t>(su);
            for (std::size_t v = u + 1; v < n_; ++v) {
                const double c = critical(u, v);
                if (coords.cosh_distance(u, v) < cosh_radius) {
                    part.push_back(c);
                    c_super = std::max(c_super, c);
                } else {
                    c_sub = std::min(c_sub, c);
                }
            }
        }
    }
    c_sub_ = c_sub;
    c_super_ = c_super;

    std::vector<std::vector<double>> other_parts(static_cast<std::size_t>(workers));
#pragma omp parallel num_threads(workers)
    {
        auto& part = other_parts[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 16)
        for (std::int64_t su = 0; su < static_cast<std::int64_t>(n_); ++su) {
            const auto u = static_cast<std::size_t>(su);
            for (std::size_t v = u + 1; v < n_; ++v) {
                if (coords.cosh_distance(u, v) < cosh_radius)
                    continue;
                const double c = critical(u, v);
                if (c <= c_super)
                    part.push_back(c);
            }
        }
    }

    for (auto& part : hrg_parts)
        hrg_critical_.insert(hrg_critical_.end(), part.begin(), part.end());
    for (auto& part : other_parts)
        other_critical_.insert(other_critical_.end(), part.begin(), part.end());
    std::sort(hrg_critical_.begin(), hrg_critical_.end());
    std::sort(other_critical_.begin(), other_critical_.end());
}

double CouplingAnalysis::c_sub_below() const noexcept { return std::nextafter(c_sub_, 0.0); }

double CouplingAnalysis::d_hrg() const noexcept { return 2.0 * static_cast<double>(hrg_edges()) / static_cast<double>(n_); }

double CouplingAnalysis::d_girg() const noexcept {
    const auto below = static_cast<std::uint64_t>(
        std::lower_bound(hrg_critical_.begin(), hrg_critical_.end(), c_sub_) - hrg_critical_.begin());
    return 2.0 * static_cast<double>(below) / static_cast<double>(n_);
}

double CouplingAnalysis::D_girg() const noexcept {
    return 2.0 * static_cast<double>(hrg_critical_.size() + other_critical_.size()) / static_cast<double>(n_);
}

std::uint64_t CouplingAnalysis::girg_edges(double constant) const {
    if (constant > c_super_)
        throw std::out_of_range("coupling data only covers constants up to c_super");
    return count_up_to(hrg_critical_, constant) + count_up_to(other_critical_, constant);
}

CouplingPoint CouplingAnalysis::at(double constant) const {
    const std::uint64_t edges = girg_edges(constant);
    const std::uint64_t hrg_inside = count_up_to(hrg_critical_, constant);
    return {constant, 2.0 * static_cast<double>(edges) / static_cast<double>(n_), hrg_edges() - hrg_inside,
            edges - hrg_inside};
}

double CouplingAnalysis::degree_matched_constant() const {
    if (hrg_critical_.empty())
        return 0.0;
    std::vector<double> all;
    all.reserve(hrg_critical_.size() + other_critical_.size());
    std::merge(hrg_critical_.begin(), hrg_critical_.end(), other_critical_.begin(), other_critical_.end(),
               std::back_inserter(all));
    return all[hrg_critical_.size() - 1];
}

std::vector<CouplingPoint> CouplingAnalysis::curve(double c_lo, unsigned points) const {
    std::vector<CouplingPoint> result;
    if (points == 0)
        return result;
    const double lo = std::clamp(c_lo, 0.0, c_super_);
    for (unsigned k = 0; k < points; ++k) {
        const double c = points == 1 ? c_super_ : lo + (c_super_ - lo) * k / (points - 1);
        result.push_back(at(std::min(c, c_super_)));
    }
    return result;
}

std::string format_coupling_curve(const std::vector<CouplingPoint>& points) {
    std::string out = "constant,average_degree,missing,extra\n";
    char line[128];
    for (const CouplingPoint& p : points) {
        std::snprintf(line, sizeof line, "%.17g,%.10g,%llu,%llu\n", p.constant, p.average_degree,
                      static_cast<unsigned long long>(p.missing), static_cast<unsigned long long>(p.extra));
        out += line;
    }
    return out;
}

} // namespace girg
