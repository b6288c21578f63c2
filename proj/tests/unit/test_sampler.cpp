#include <girg/degree_estimator.hpp>
#include <girg/generator.hpp>
#include <girg/oracle.hpp>
#include <girg/sampler.hpp>

#include <girg_test_support.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

using namespace girg;

namespace {

GirgGenerator make_generator(std::uint64_t n, unsigned d, double ple, double temp, double degree, std::uint64_t seed) {
    WeightSet w = sample_weights(n, ple, seed);
    PositionSet p = sample_positions(n, d, seed + 1);
    const double c = estimate_c(degree, w.values(), d, temp).constant;
    return GirgGenerator(std::move(w), std::move(p), c, temp, 1);
}

std::vector<Edge> sample_sorted(const GirgGenerator& g, std::uint64_t seed, unsigned threads = 1) {
    EdgeCollector sink;
    const std::uint64_t m = g.sample(seed, sink, threads);
    EXPECT_EQ(m, sink.edges().size());
    return testkit::sorted(sink.take());
}

// Accepts every pair it is shown and counts the visits.
class CompleteModel {
public:
    explicit CompleteModel(const SpatialIndex& index) : index_(index) {}

    bool neighbor_edge(std::size_t s, std::size_t t, CounterRng&) const { return check(s, t); }
    bool samples_distant_pairs() const noexcept { return true; }
    double distant_bound(unsigned, unsigned, double) const noexcept { return 1.0; }
    bool accept_distant(std::size_t s, std::size_t t, double, double) const { return check(s, t); }

private:
    bool check(std::size_t s, std::size_t t) const {
        EXPECT_NE(index_.vertex(s), index_.vertex(t));
        return true;
    }
    const SpatialIndex& index_;
};

} // namespace

TEST(GeometricJump, HandValues) {
    EXPECT_EQ(geometric_jump(1.0, 0.3), 0u);
    EXPECT_EQ(geometric_jump(0.5, 0.74), 1u);
    EXPECT_EQ(geometric_jump(0.5, 0.0), 0u);
    EXPECT_THROW(geometric_jump(0.0, 0.5), std::invalid_argument);
    EXPECT_THROW(geometric_jump(-0.1, 0.5), std::invalid_argument);
    EXPECT_THROW(geometric_jump(1.5, 0.5), std::invalid_argument);
}

TEST(GeometricJump, MeanMatchesDistribution) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double sum = 0.0;
    const int draws = 1'000'000;
    for (int k = 0; k < draws; ++k)
        sum += static_cast<double>(geometric_jump(0.01, u(rng)));
    EXPECT_NEAR(sum / draws, 99.0, 0.02 * 99.0);
}

TEST(GeometricJump, SkipperAgreesWithFunction) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const double p : {1.0, 0.9, 0.3, 1e-3, 1e-9}) {
        const GeometricSkipper skip(p);
        for (int k = 0; k < 1000; ++k) {
            const double x = u(rng);
            ASSERT_EQ(skip(x), geometric_jump(p, x));
        }
    }
}

TEST(Sampler, TwoCoincidentVerticesAlwaysConnect) {
    for (const double temp : {0.0, 0.5}) {
        const GirgGenerator g(WeightSet({1.0, 1.0}), PositionSet(2, {0.25, 0.25, 0.25, 0.25}), 1.0, temp, 1);
        const auto edges = sample_sorted(g, 3);
        ASSERT_EQ(edges.size(), 1u);
        EXPECT_EQ(edges[0], (Edge{0, 1}));
    }
}

TEST(Sampler, ThresholdMatchesBruteForce) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 24; ++trial) {
        const unsigned d = 1 + trial % 3;
        const std::uint64_t n = 100 + rng() % 900;
        const double ple = 2.1 + 0.1 * static_cast<double>(rng() % 10);
        const GirgGenerator g = make_generator(n, d, ple, 0.0, 3.0 + static_cast<double>(rng() % 20), rng());
        const auto expected = brute_force_girg(g.weights(), g.positions(), g.kernel().constant(), 0.0);
        ASSERT_EQ(sample_sorted(g, rng()), expected) << "n=" << n << " d=" << d << " ple=" << ple;
    }
}

TEST(Sampler, NoDuplicatesOrLoops) {
    for (const double temp : {0.0, 0.3, 0.8}) {
        const GirgGenerator g = make_generator(20'000, 2, 2.3, temp, 15.0, 5);
        const auto edges = sample_sorted(g, 6);
        for (std::size_t k = 0; k < edges.size(); ++k) {
            ASSERT_LT(edges[k].u, edges[k].v);
            if (k > 0) {
                ASSERT_NE(edges[k - 1], edges[k]);
            }
        }
    }
}

TEST(Engine, VisitsEveryPairExactlyOnce) {
    for (const unsigned d : {1u, 2u, 3u})
        for (const double temp : {0.0, 0.5}) {
            const GirgGenerator g = make_generator(600, d, 2.5, temp, 8.0, 7 + d);
            const CompleteModel model(g.index());
            const CellPairEngine engine(model, g.index(), g.schedule(), 1);
            for (const unsigned threads : {1u, 3u}) {
                EdgeCollector sink;
                engine.run(sink, threads);
                const auto edges = testkit::sorted(sink.take());
                ASSERT_EQ(edges.size(), pair_count(600));
                for (std::size_t k = 1; k < edges.size(); ++k)
                    ASSERT_NE(edges[k - 1], edges[k]);
            }
        }
}

TEST(Sampler, PerPairFrequencyMatchesProbability) {
    const std::uint64_t n = 30;
    for (const double temp : {0.3, 0.7}) {
        const GirgGenerator g = make_generator(n, 2, 2.5, temp, 5.0, 8);
        const int runs = 4000;
        std::vector<std::uint64_t> hits(pair_count(n), 0);
        double total_edges = 0.0;
        for (int r = 0; r < runs; ++r) {
            EdgeCollector sink;
            g.sample(1000 + static_cast<std::uint64_t>(r), sink, 1);
            total_edges += static_cast<double>(sink.edges().size());
            for (const Edge& e : sink.edges())
                ++hits[pair_index(e.u, e.v, n)];
        }
        double expected_edges = 0.0;
        for (std::uint64_t u = 0; u < n; ++u)
            for (std::uint64_t v = u + 1; v < n; ++v) {
                const double p = g.kernel().probability(g.weights()[u], g.weights()[v],
                                                        torus_distance(g.positions().point(u), g.positions().point(v)));
                expected_edges += p;
                ASSERT_TRUE(testkit::binomial_consistent(hits[pair_index(u, v, n)], runs, p))
                    << hits[pair_index(u, v, n)] << " hits, pair " << u << "," << v << " p=" << p;
            }
        EXPECT_NEAR(total_edges / runs, expected_edges, 0.02 * expected_edges);
    }
}

TEST(Sampler, BitIdenticalAcrossThreadCounts) {
    for (const double temp : {0.0, 0.5}) {
        const GirgGenerator g = make_generator(30'000, 2, 2.5, temp, 10.0, 9);
        const auto reference = sample_sorted(g, 10, 1);
        for (const unsigned threads : {2u, 4u, 8u})
            ASSERT_EQ(sample_sorted(g, 10, threads), reference) << threads << " threads";
        if (temp > 0.0) {
            EXPECT_NE(sample_sorted(g, 11, 1), reference);
        } else {
            EXPECT_EQ(sample_sorted(g, 11, 1), reference);
        }
    }
}

TEST(Generate, FullPipelineIsReproducible) {
    GirgParams p;
    p.n = 5000;
    p.dimension = 2;
    p.degree_target = 10.0;
    p.seed = 12;
    EdgeCounter a, b;
    double seen = 0.0;
    const GenerationResult ra = generate_girg(p, a, 1, [&](double c) {
        seen = c;
        EXPECT_EQ(a.count(), 0u);
    });
    generate_girg(p, b, 4);
    EXPECT_EQ(seen, ra.parameter);
    EXPECT_EQ(a.count(), ra.edges);
    EXPECT_EQ(a.count(), b.count());
    EXPECT_EQ(a.checksum(), b.checksum());
    EXPECT_GT(ra.timings.total(), 0.0);
}
