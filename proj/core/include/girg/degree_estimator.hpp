#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace girg {

/// Error term of the closed-form degree for saturated pairs (probability 1
/// regardless of position): the unordered-pair sum of (formula - 1).
struct SaturatedError {
    double value = 0.0;
    std::uint64_t pairs = 0;
    std::uint64_t vertices = 0;
};

struct DegreeEstimate {
    double constant = 0.0;
    /// Factor that, applied to every weight with c = 1, reproduces the same
    /// probabilities: c^T for T > 0 and c^d for T = 0.
    double weight_scale = 0.0;
    double expected_degree = 0.0;
    /// Power sums were evaluated relative to the largest weight (T < 0.2).
    bool rescaled = false;
    unsigned iterations = 0;
};

/// Expected average degree f(c) of a GIRG over fixed weights, and the search
/// for the constant c matching a target. Weight-dependent sums are computed
/// once; the descending sorted prefix of the weights needed for the saturated
/// pairs is extended lazily and never shrinks.
class DegreeEstimator {
public:
    /// Throws ParameterError for an empty weight set, dimension outside
    /// [1, 5] or T outside [0, 0.99].
    DegreeEstimator(std::span<const double> weights, unsigned dimension, double temperature, unsigned threads = 0);

    std::size_t size() const noexcept { return entries_.size(); }
    unsigned dimension() const noexcept { return dimension_; }
    double temperature() const noexcept { return temperature_; }
    bool rescaled() const noexcept { return temperature_ > 0.0 && temperature_ < 0.2; }

    /// Pairs with w_u w_v above this value are saturated, i.e. the connection
    /// length c^(T/d) (w_u w_v / W)^(1/d) (T > 0) or c (w_u w_v / W)^(1/d)
    /// (T = 0) exceeds 1/2.
    double saturation_threshold(double constant) const;

    /// Expected number of edges between u and v assuming an unsaturated pair.
    double pair_formula(double wu, double wv, double constant) const;

    double expected_avg_degree(double constant);
    SaturatedError saturated_error(double constant);

    /// Requires 0 < target < n - 1.
    DegreeEstimate estimate(double target_degree);

    std::size_t sorted_prefix_size() const noexcept { return sorted_.size(); }
    double total_weight() const noexcept { return total_; }

private:
    struct PairSums {
        std::uint64_t pairs = 0;
        std::uint64_t vertices = 0;
        double products = 0.0;        // sum of w_u w_v / W
        double scaled_powers = 0.0;   // sum of (w_u / w_max)^(1/T) (w_v / w_max)^(1/T)
    };

    struct Entry {
        double weight;
        double power;  // (weight / w_max)^(1/T), 0 for T = 0
    };

    /// Sums over saturated pairs, and the same sums over unsaturated pairs.
    /// The latter are accumulated directly rather than as total minus
    /// saturated, which would cancel catastrophically once saturated pairs
    /// dominate.
    std::pair<PairSums, PairSums> pair_sums(double constant);
    void extend_prefix(double bound);
    double log_power_factor(double constant) const;

    std::vector<Entry> entries_;
    unsigned dimension_;
    double temperature_;
    double total_ = 0.0;
    double max_weight_ = 0.0;

    std::size_t partitioned_ = 0;
    double covered_bound_;  // every weight above this is in the sorted prefix
    std::vector<double> sorted_;
    std::vector<double> sorted_powers_;
    std::vector<double> prefix_products_;  // sums over sorted_[0, k)
    std::vector<double> prefix_powers_;
    // Over sorted_[k, end) together with every unsorted entry: sums of the
    // values and of all pairwise products.
    std::vector<double> suffix_products_;
    std::vector<double> suffix_product_pairs_;
    std::vector<double> suffix_powers_;
    std::vector<double> suffix_power_pairs_;
};

double expected_avg_degree(double constant, std::span<const double> weights, unsigned dimension, double temperature);

DegreeEstimate estimate_c(double target_degree, std::span<const double> weights, unsigned dimension,
                          double temperature, unsigned threads = 0);

} // namespace girg
