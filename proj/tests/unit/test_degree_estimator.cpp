#include <girg/degree_estimator.hpp>
#include <girg/model.hpp>

#include <girg_test_support.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <iomanip>
#include <random>
#include <set>

using namespace girg;

namespace {

// O(|R|^2) scan over all pairs, with the saturation condition written out as
// "connection length exceeds 1/2".
SaturatedError scan_saturated(DegreeEstimator& est, std::span<const double> w, double c) {
    const unsigned d = est.dimension();
    const double T = est.temperature();
    const double W = est.total_weight();
    const double scale = T > 0.0 ? std::pow(c, T) : std::pow(c, static_cast<double>(d));
    const double limit = W / scale / std::pow(2.0, static_cast<double>(d));
    SaturatedError out;
    std::set<std::size_t> touched;
    for (std::size_t u = 0; u < w.size(); ++u)
        for (std::size_t v = u + 1; v < w.size(); ++v)
            if (w[u] * w[v] > limit) {
                out.value += est.pair_formula(w[u], w[v], c) - 1.0;
                ++out.pairs;
                touched.insert(u);
                touched.insert(v);
            }
    out.vertices = touched.size();
    return out;
}

} // namespace

TEST(Estimator, TwoVertexHandValues) {
    const std::vector<double> w{1.0, 1.0};
    DegreeEstimator est(w, 1, 0.0);
    // Two points at uniform distance in [0, 1/2]; connected iff dist <= c / 2.
    EXPECT_NEAR(est.expected_avg_degree(0.25), 0.25, 1e-15);
    EXPECT_NEAR(est.expected_avg_degree(0.5), 0.5, 1e-15);
    EXPECT_NEAR(est.expected_avg_degree(2.0), 1.0, 1e-15);
    EXPECT_NEAR(est.expected_avg_degree(5.0), 1.0, 1e-15);
}

TEST(Estimator, VanishesLinearlyAsConstantShrinks) {
    const WeightSet w = sample_weights(1000, 2.5, 1);
    DegreeEstimator est(w.values(), 1, 0.0);
    const double a = est.expected_avg_degree(1e-6);
    const double b = est.expected_avg_degree(1e-7);
    EXPECT_GT(a, 0.0);
    EXPECT_NEAR(a / b, 10.0, 1e-9);
    DegreeEstimator warm(w.values(), 2, 0.5);
    // For T > 0 the leading term scales with c^T.
    EXPECT_NEAR(warm.expected_avg_degree(1e-12) / warm.expected_avg_degree(1e-14), 10.0, 1e-6);
}

TEST(Estimator, SaturatedErrorMatchesPairScan) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 40; ++trial) {
        const unsigned d = 1 + trial % 3;
        const double T = (trial / 3) % 3 == 0 ? 0.0 : 0.15 + 0.2 * static_cast<double>((trial / 3) % 3);
        const WeightSet w = sample_weights(1500, 2.1 + 0.05 * static_cast<double>(rng() % 12), rng());
        DegreeEstimator est(w.values(), d, T);
        const double c = std::exp(std::uniform_real_distribution<double>(-1.0, 4.0)(rng));
        const SaturatedError got = est.saturated_error(c);
        const SaturatedError want = scan_saturated(est, w.values(), c);
        ASSERT_EQ(got.pairs, want.pairs) << "trial " << trial;
        ASSERT_EQ(got.vertices, want.vertices) << "trial " << trial;
        ASSERT_NEAR(got.value, want.value, 1e-10 * std::max(1.0, std::abs(want.value))) << "trial " << trial;
    }
}

TEST(Estimator, MatchesPairwiseSumUnderHeavySaturation) {
    const WeightSet w = sample_weights(1500, 2.3, 12);
    for (const unsigned d : {1u, 3u})
        for (const double T : {0.0, 0.1, 0.5})
            for (const double c : {0.5, 20.0, 800.0, 1e5}) {
                DegreeEstimator est(w.values(), d, T);
                const double scale = T > 0.0 ? std::pow(c, T) : std::pow(c, static_cast<double>(d));
                const double limit = est.total_weight() / scale / std::pow(2.0, static_cast<double>(d));
                double sum = 0.0;
                for (std::size_t u = 0; u < w.size(); ++u)
                    for (std::size_t v = u + 1; v < w.size(); ++v)
                        sum += w[u] * w[v] > limit ? 1.0 : est.pair_formula(w[u], w[v], c);
                const double want = 2.0 * sum / static_cast<double>(w.size());
                ASSERT_NEAR(est.expected_avg_degree(c), want, 1e-9 * want) << "d=" << d << " T=" << T << " c=" << c;
            }
}

TEST(Estimator, ThreeEqualWeightsAllSaturated) {
    const std::vector<double> w{10.0, 10.0, 10.0};
    DegreeEstimator est(w, 1, 0.0);
    // w_u w_v / W = 10/3, so every pair saturates once c exceeds 3/20.
    const SaturatedError e = est.saturated_error(1.0);
    EXPECT_EQ(e.pairs, 3u);
    EXPECT_EQ(e.vertices, 3u);
    EXPECT_NEAR(e.value, 3.0 * (2.0 * 10.0 / 3.0 - 1.0), 1e-12);
    EXPECT_NEAR(est.expected_avg_degree(1.0), 2.0, 1e-12);
    EXPECT_EQ(est.saturated_error(0.1).pairs, 0u);
}

TEST(Estimator, MonotoneInConstant) {
    const WeightSet w = sample_weights(20'000, 2.3, 3);
    for (const unsigned d : {1u, 3u})
        for (const double T : {0.0, 0.1, 0.5, 0.9}) {
            DegreeEstimator est(w.values(), d, T);
            double previous = 0.0;
            for (double c = 1e-3; c < 1e4; c *= 1.3) {
                const double f = est.expected_avg_degree(c);
                ASSERT_GE(f, previous * (1.0 - 1e-12)) << "d=" << d << " T=" << T << " c=" << c;
                ASSERT_LE(f, static_cast<double>(w.size() - 1) * (1.0 + 1e-9)) << std::setprecision(17) << f << " d=" << d << " T=" << T << " c=" << c;
                previous = f;
            }
        }
}

TEST(Estimator, SearchHitsTarget) {
    const WeightSet w = sample_weights(50'000, 2.5, 4);
    for (const unsigned d : {1u, 2u, 4u})
        for (const double T : {0.0, 0.05, 0.5})
            for (const double target : {0.5, 10.0, 300.0}) {
                DegreeEstimator est(w.values(), d, T);
                const DegreeEstimate r = est.estimate(target);
                EXPECT_NEAR(r.expected_degree, target, 1e-6 * target);
                EXPECT_NEAR(est.expected_avg_degree(r.constant), target, 1e-6 * target);
                EXPECT_EQ(r.rescaled, T > 0.0 && T < 0.2);
                const double scale = T > 0.0 ? std::pow(r.constant, T) : std::pow(r.constant, static_cast<double>(d));
                EXPECT_NEAR(r.weight_scale, scale, 1e-12 * scale);
                EXPECT_GT(r.iterations, 0u);
            }
}

TEST(Estimator, AgreesWithMonteCarloOverPositions) {
    const std::uint64_t n = 256;
    const WeightSet w = sample_weights(n, 2.5, 5);
    for (const double T : {0.0, 0.5}) {
        const double c = estimate_c(6.0, w.values(), 2, T).constant;
        const ConnectionKernel kernel(c, T, 2, w.total());
        std::vector<double> samples;
        for (std::uint64_t draw = 0; draw < 400; ++draw) {
            const PositionSet p = sample_positions(n, 2, 100 + draw);
            double sum = 0.0;
            for (std::uint64_t u = 0; u < n; ++u)
                for (std::uint64_t v = u + 1; v < n; ++v)
                    sum += kernel.probability(w[u], w[v], torus_distance(p.point(u), p.point(v)));
            samples.push_back(2.0 * sum / static_cast<double>(n));
        }
        const testkit::MeanStd m = testkit::mean_and_stderr(samples);
        EXPECT_NEAR(m.mean, 6.0, std::max(0.02 * 6.0, 4.0 * m.stderr_)) << "T=" << T;
    }
}

TEST(Estimator, RejectsInvalidInput) {
    const std::vector<double> w{1.0, 2.0, 3.0};
    EXPECT_THROW(DegreeEstimator(w, 1, 0.995), ParameterError);
    EXPECT_THROW(DegreeEstimator(w, 0, 0.0), ParameterError);
    EXPECT_THROW(DegreeEstimator(w, 6, 0.0), ParameterError);
    EXPECT_THROW(DegreeEstimator(std::vector<double>{}, 1, 0.0), ParameterError);
    DegreeEstimator est(w, 1, 0.0);
    EXPECT_THROW(est.estimate(2.0), ParameterError);
    EXPECT_THROW(est.estimate(0.0), ParameterError);
    EXPECT_THROW(est.expected_avg_degree(0.0), ParameterError);
}

TEST(Estimator, SortedPrefixOnlyGrows) {
    const WeightSet w = sample_weights(100'000, 2.2, 6);
    DegreeEstimator est(w.values(), 2, 0.0);
    est.expected_avg_degree(1.0);
    const std::size_t small = est.sorted_prefix_size();
    est.expected_avg_degree(20.0);
    const std::size_t large = est.sorted_prefix_size();
    EXPECT_GE(large, small);
    est.expected_avg_degree(0.5);
    EXPECT_EQ(est.sorted_prefix_size(), large);
    EXPECT_LT(small, w.size());
}
