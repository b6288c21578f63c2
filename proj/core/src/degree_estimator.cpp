#include <girg/degree_estimator.hpp>

#include <girg/model.hpp>
#include <girg/parallel.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace girg {

DegreeEstimator::DegreeEstimator(std::span<const double> weights, unsigned dimension, double temperature,
                                 unsigned threads)
    : entries_(weights.size()),
      dimension_(dimension),
      temperature_(temperature),
      covered_bound_(std::numeric_limits<double>::infinity()) {
    if (weights.empty())
        throw ParameterError("weight set must not be empty");
    if (dimension < 1 || dimension > kMaxDimension)
        throw ParameterError("dimension must be in [1, " + std::to_string(kMaxDimension) + "]");
    if (!(temperature >= 0.0 && temperature <= 0.99))
        throw ParameterError("degree estimation requires temperature in [0, 0.99]");
    for (const double w : weights)
        if (!(w > 0.0) || !std::isfinite(w))
            throw ParameterError("weights must be positive and finite");

    const std::size_t n = weights.size();
    max_weight_ = *std::max_element(weights.begin(), weights.end());
    total_ = deterministic_sum(n, [&](std::size_t v) { return weights[v]; }, threads);
    const double exponent = temperature_ > 0.0 ? 1.0 / temperature_ : 0.0;
#pragma omp parallel for schedule(static) num_threads(static_cast<int>(resolve_threads(threads)))
    for (std::int64_t sv = 0; sv < static_cast<std::int64_t>(n); ++sv) {
        const auto v = static_cast<std::size_t>(sv);
        entries_[v] = {weights[v], temperature_ > 0.0 ? std::pow(weights[v] / max_weight_, exponent) : 0.0};
    }
}

double DegreeEstimator::saturation_threshold(double constant) const {
    const double scale = temperature_ > 0.0 ? std::pow(constant, temperature_) : pow_dim(constant, dimension_);
    return std::ldexp(total_ / scale, -static_cast<int>(dimension_));
}

double DegreeEstimator::pair_formula(double wu, double wv, double constant) const {
    const double a = wu * wv / total_;
    const double two_d = std::ldexp(1.0, static_cast<int>(dimension_));
    if (temperature_ == 0.0)
        return two_d * pow_dim(constant, dimension_) * a;
    const double inv_t = 1.0 / temperature_;
    const double short_part = std::pow(constant, temperature_) * two_d / (1.0 - temperature_) * a;
    const double long_part = std::exp(std::log(constant) + dimension_ * inv_t * std::numbers::ln2 + inv_t * std::log(a) -
                                      std::log(inv_t - 1.0));
    return short_part - long_part;
}

double DegreeEstimator::log_power_factor(double constant) const {
    const double inv_t = 1.0 / temperature_;
    return std::log(constant) + dimension_ * inv_t * std::numbers::ln2 - std::log(inv_t - 1.0) +
           inv_t * std::log(max_weight_ * max_weight_ / total_);
}

void DegreeEstimator::extend_prefix(double bound) {
    if (!(bound < covered_bound_))
        return;
    const auto first = entries_.begin() + static_cast<std::ptrdiff_t>(partitioned_);
    const auto middle = std::partition(first, entries_.end(), [bound](const Entry& e) { return e.weight > bound; });
    std::sort(first, middle, [](const Entry& a, const Entry& b) { return a.weight > b.weight; });
    if (prefix_products_.empty()) {
        prefix_products_.push_back(0.0);
        prefix_powers_.push_back(0.0);
    }
    for (auto it = first; it != middle; ++it) {
        sorted_.push_back(it->weight);
        sorted_powers_.push_back(it->power);
        prefix_products_.push_back(prefix_products_.back() + it->weight);
        prefix_powers_.push_back(prefix_powers_.back() + it->power);
    }
    partitioned_ = sorted_.size();
    covered_bound_ = bound;

    double rest = 0.0, rest_pairs = 0.0, rest_powers = 0.0, rest_power_pairs = 0.0;
    for (auto it = middle; it != entries_.end(); ++it) {
        rest_pairs += it->weight * rest;
        rest += it->weight;
        rest_power_pairs += it->power * rest_powers;
        rest_powers += it->power;
    }
    const std::size_t m = sorted_.size();
    suffix_products_.assign(m + 1, rest);
    suffix_product_pairs_.assign(m + 1, rest_pairs);
    suffix_powers_.assign(m + 1, rest_powers);
    suffix_power_pairs_.assign(m + 1, rest_power_pairs);
    for (std::size_t k = m; k-- > 0;) {
        suffix_product_pairs_[k] = sorted_[k] * suffix_products_[k + 1] + suffix_product_pairs_[k + 1];
        suffix_products_[k] = sorted_[k] + suffix_products_[k + 1];
        suffix_power_pairs_[k] = sorted_powers_[k] * suffix_powers_[k + 1] + suffix_power_pairs_[k + 1];
        suffix_powers_[k] = sorted_powers_[k] + suffix_powers_[k + 1];
    }
}

std::pair<DegreeEstimator::PairSums, DegreeEstimator::PairSums> DegreeEstimator::pair_sums(double constant) {
    const double threshold = saturation_threshold(constant);
    // A weight at or below this bound cannot saturate even with the largest partner.
    extend_prefix(threshold / max_weight_ * (1.0 - 1e-12));

    PairSums saturated;
    PairSums free;
    std::size_t partners = sorted_.size();
    bool free_done = false;
    for (std::size_t p = 0; p < sorted_.size(); ++p) {
        const double w = sorted_[p];
        while (partners > 0 && !(w * sorted_[partners - 1] > threshold))
            --partners;
        if (!free_done) {
            if (partners <= p + 1) {
                // No vertex from p on saturates with a lighter one.
                free.products += suffix_product_pairs_[p];
                free.scaled_powers += suffix_power_pairs_[p];
                free_done = true;
            } else {
                free.products += w * suffix_products_[partners];
                free.scaled_powers += sorted_powers_[p] * suffix_powers_[partners];
            }
        }
        if (partners == 0)
            break;
        if (p >= partners || partners > 1)
            ++saturated.vertices;
        const std::size_t heavier = std::min(partners, p);
        if (heavier == 0)
            continue;
        saturated.pairs += heavier;
        saturated.products += w * prefix_products_[heavier] / total_;
        saturated.scaled_powers += sorted_powers_[p] * prefix_powers_[heavier];
    }
    if (!free_done) {
        free.products += suffix_product_pairs_[sorted_.size()];
        free.scaled_powers += suffix_power_pairs_[sorted_.size()];
    }
    free.products /= total_;
    return {saturated, free};
}

SaturatedError DegreeEstimator::saturated_error(double constant) {
    const PairSums sums = pair_sums(constant).first;
    const double two_d = std::ldexp(1.0, static_cast<int>(dimension_));
    SaturatedError error{0.0, sums.pairs, sums.vertices};
    if (sums.pairs == 0)
        return error;
    const auto pairs = static_cast<double>(sums.pairs);
    if (temperature_ == 0.0) {
        error.value = two_d * pow_dim(constant, dimension_) * sums.products - pairs;
    } else {
        const double short_factor = std::pow(constant, temperature_) * two_d / (1.0 - temperature_);
        const double long_part =
            sums.scaled_powers > 0.0 ? std::exp(log_power_factor(constant) + std::log(sums.scaled_powers)) : 0.0;
        error.value = short_factor * sums.products - long_part - pairs;
    }
    return error;
}

double DegreeEstimator::expected_avg_degree(double constant) {
    if (!(constant > 0.0))
        throw ParameterError("constant must be positive");
    const auto [saturated, free] = pair_sums(constant);
    const double two_d = std::ldexp(1.0, static_cast<int>(dimension_));
    const double n = static_cast<double>(size());
    const double products = 2.0 * free.products;
    const double saturated_degree = 2.0 * static_cast<double>(saturated.pairs);

    if (temperature_ == 0.0)
        return (two_d * pow_dim(constant, dimension_) * products + saturated_degree) / n;

    const double short_factor = std::pow(constant, temperature_) * two_d / (1.0 - temperature_);
    const double inner = 2.0 * free.scaled_powers;
    const double long_part = inner > 0.0 ? std::exp(log_power_factor(constant) + std::log(inner)) : 0.0;
    return (short_factor * products - long_part + saturated_degree) / n;
}

DegreeEstimate DegreeEstimator::estimate(double target_degree) {
    const double n = static_cast<double>(size());
    if (!(target_degree > 0.0 && target_degree < n - 1.0))
        throw ParameterError("target degree must lie in (0, n - 1)");

    const double tolerance = std::max(1e-7 * target_degree, 1e-10);
    DegreeEstimate result;
    result.rescaled = rescaled();
    auto finish = [&](double c, double value) {
        result.constant = c;
        result.expected_degree = value;
        result.weight_scale = temperature_ > 0.0 ? std::pow(c, temperature_) : pow_dim(c, dimension_);
        return result;
    };

    double lo = 1.0;
    double hi = 1.0;
    double value = expected_avg_degree(1.0);
    ++result.iterations;
    if (std::abs(value - target_degree) <= tolerance)
        return finish(1.0, value);
    if (value < target_degree) {
        do {
            lo = hi;
            hi *= 2.0;
            if (!std::isfinite(hi))
                throw ParameterError("target degree is not reachable");
            value = expected_avg_degree(hi);
            ++result.iterations;
        } while (value < target_degree);
    } else {
        do {
            hi = lo;
            lo *= 0.5;
            if (!(lo > 0.0))
                throw ParameterError("target degree is not reachable");
            value = expected_avg_degree(lo);
            ++result.iterations;
        } while (value > target_degree);
    }
    if (std::abs(value - target_degree) <= tolerance)
        return finish(value < target_degree ? lo : hi, value);

    double mid = 0.5 * (lo + hi);
    for (unsigned step = 0; step < 200; ++step) {
        mid = 0.5 * (lo + hi);
        value = expected_avg_degree(mid);
        ++result.iterations;
        if (std::abs(value - target_degree) <= tolerance)
            break;
        (value < target_degree ? lo : hi) = mid;
    }
    return finish(mid, value);
}

double expected_avg_degree(double constant, std::span<const double> weights, unsigned dimension, double temperature) {
    return DegreeEstimator(weights, dimension, temperature).expected_avg_degree(constant);
}

DegreeEstimate estimate_c(double target_degree, std::span<const double> weights, unsigned dimension,
                          double temperature, unsigned threads) {
    return DegreeEstimator(weights, dimension, temperature, threads).estimate(target_degree);
}

} // namespace girg
