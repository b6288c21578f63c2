#pragma once

#include <girg/edge_sink.hpp>
#include <girg/hyperbolic.hpp>
#include <girg/model.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace girg {

/// Number of unordered pairs, the length of a per-pair uniform array.
constexpr std::uint64_t pair_count(std::uint64_t n) noexcept { return n < 2 ? 0 : n * (n - 1) / 2; }

/// Position of pair (u, v), u < v, in row-major order over u.
constexpr std::uint64_t pair_index(std::uint64_t u, std::uint64_t v, std::uint64_t n) noexcept {
    return u * n - u * (u + 1) / 2 + (v - u - 1);
}

/// O(n^2) GIRG: T = 0 is deterministic; T > 0 reads one uniform per pair
/// (pair_index order), so the result is a pure function of the inputs.
/// Edges are returned sorted.
std::vector<Edge> brute_force_girg(const WeightSet& weights, const PositionSet& positions, double constant,
                                   double temperature, std::span<const double> uniforms = {});

/// O(n^2) HRG under the same conventions.
std::vector<Edge> brute_force_hrg(const HrgCoordinates& coords, double temperature,
                                  std::span<const double> uniforms = {});

struct CouplingPoint {
    double constant = 0.0;
    double average_degree = 0.0;
    std::uint64_t missing = 0;  // HRG edges absent from the GIRG
    std::uint64_t extra = 0;    // GIRG edges absent from the HRG
};

/// Threshold HRG against the threshold GIRGs on the mapped coordinates
/// (w = e^((R - r)/2), x = theta / 2 pi, d = 1). Each pair has a critical
/// constant c_crit, the least double c for which the GIRG rule connects it, so
/// one O(n^2) pass yields the GIRG edge set for every c.
class CouplingAnalysis {
public:
    /// Requires at least two vertices.
    explicit CouplingAnalysis(const HrgCoordinates& coords, unsigned threads = 0);

    std::size_t size() const noexcept { return n_; }
    std::uint64_t hrg_edges() const noexcept { return hrg_critical_.size(); }

    /// Smallest c_crit over non-HRG pairs; every GIRG with c below it is a subgraph.
    double c_sub() const noexcept { return c_sub_; }
    /// Largest c_crit over HRG edges; the GIRG at this c is a supergraph.
    double c_super() const noexcept { return c_super_; }
    /// Largest double strictly below c_sub.
    double c_sub_below() const noexcept;

    double d_hrg() const noexcept;
    double d_girg() const noexcept;  // average degree at c_sub_below()
    double D_girg() const noexcept;  // average degree at c_super()

    /// Edge counts of the GIRG at c; requires c <= c_super().
    std::uint64_t girg_edges(double constant) const;
    CouplingPoint at(double constant) const;

    /// c whose GIRG has as many edges as the HRG (ties may overshoot).
    double degree_matched_constant() const;

    /// Evenly spaced curve over [c_lo, c_super] with `points` entries.
    std::vector<CouplingPoint> curve(double c_lo, unsigned points) const;

    /// Ties: a GIRG pair is an edge iff c >= c_crit; an HRG pair iff cosh d < cosh R.
    static constexpr const char* kTieConvention = "girg-inclusive,hrg-strict";

private:
    std::size_t n_ = 0;
    double c_sub_ = 0.0;
    double c_super_ = 0.0;
    std::vector<double> hrg_critical_;    // sorted, HRG edges
    std::vector<double> other_critical_;  // sorted, non-HRG pairs with c_crit <= c_super
};

/// Least double c > 0 with dist^d <= c^d (w_u w_v / W) under the kernel's
/// floating-point evaluation (d = 1 here); 0 for coincident points.
double critical_constant(double wu, double wv, double total_weight, double dist);

std::string format_coupling_curve(const std::vector<CouplingPoint>& points);

} // namespace girg
