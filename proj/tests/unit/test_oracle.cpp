#include <girg/hyperbolic.hpp>
#include <girg/oracle.hpp>

#include <girg_test_support.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace girg;

namespace {

HrgCoordinates coords_for(std::uint64_t n, double degree, std::uint64_t seed) {
    const RadiusEstimate est = estimate_R(n, 0.75, 0.0, degree);
    return sample_hrg_coordinates(n, 0.75, est.radius, seed);
}

bool is_subset(const std::vector<Edge>& small, const std::vector<Edge>& large) {
    return std::includes(large.begin(), large.end(), small.begin(), small.end());
}

} // namespace

TEST(PairIndex, RowMajorEnumeration) {
    std::uint64_t expected = 0;
    for (std::uint64_t u = 0; u < 7; ++u)
        for (std::uint64_t v = u + 1; v < 7; ++v)
            ASSERT_EQ(pair_index(u, v, 7), expected++);
    EXPECT_EQ(expected, pair_count(7));
    EXPECT_EQ(pair_count(1), 0u);
}

TEST(BruteForce, TwoCoincidentVertices) {
    const WeightSet w({1.0, 1.0});
    const PositionSet p(1, {0.4, 0.4});
    EXPECT_EQ(brute_force_girg(w, p, 1e-3, 0.0), (std::vector<Edge>{{0, 1}}));
    const std::vector<double> u{0.999};
    EXPECT_EQ(brute_force_girg(w, p, 1e-3, 0.5, u), (std::vector<Edge>{{0, 1}}));
    const HrgCoordinates origin(4.0, {0.0, 0.0}, {0.0, 0.0});
    EXPECT_EQ(brute_force_hrg(origin, 0.0), (std::vector<Edge>{{0, 1}}));
}

TEST(BruteForce, UsesUniformPerPair) {
    const WeightSet w({1.0, 1.0});
    const PositionSet p(1, {0.0, 0.45});
    const double prob = ConnectionKernel(0.1, 0.5, 1, 2.0).probability(1.0, 1.0, 0.45);
    ASSERT_GT(prob, 0.0);
    ASSERT_LT(prob, 1.0);
    EXPECT_EQ(brute_force_girg(w, p, 0.1, 0.5, std::vector<double>{prob * 0.99}).size(), 1u);
    EXPECT_TRUE(brute_force_girg(w, p, 0.1, 0.5, std::vector<double>{prob}).empty());
}

TEST(CriticalConstant, LeastConnectingDouble) {
    for (const double dist : {0.01, 0.1234, 0.4999})
        for (const double a : {0.001, 0.3, 7.0}) {
            const double c = critical_constant(a, 1.0, 1.0, dist);
            ASSERT_TRUE(ConnectionKernel(c, 0.0, 1, 1.0).threshold_edge(a, 1.0, dist));
            ASSERT_FALSE(ConnectionKernel(std::nextafter(c, 0.0), 0.0, 1, 1.0).threshold_edge(a, 1.0, dist));
        }
    EXPECT_EQ(critical_constant(1.0, 1.0, 1.0, 0.0), 0.0);
}

TEST(Coupling, RejectsTinyInput) {
    const HrgCoordinates one(3.0, {1.0}, {0.0});
    EXPECT_THROW(CouplingAnalysis{one}, ParameterError);
}

TEST(Coupling, BracketingAndContainment) {
    for (const std::uint64_t seed : {1u, 2u, 3u}) {
        const HrgCoordinates coords = coords_for(2000, 20.0, seed);
        const CouplingAnalysis a(coords);
        const auto hrg = brute_force_hrg(coords, 0.0);
        ASSERT_EQ(a.hrg_edges(), hrg.size());
        EXPECT_LE(a.d_girg(), a.d_hrg());
        EXPECT_LE(a.d_hrg(), a.D_girg());
        EXPECT_LE(a.c_sub(), a.c_super());

        const MappedGirg m = hrg_to_girg_map(coords);
        const auto sub = brute_force_girg(m.weights, m.positions, a.c_sub_below(), 0.0);
        const auto super = brute_force_girg(m.weights, m.positions, a.c_super(), 0.0);
        EXPECT_TRUE(is_subset(sub, hrg));
        EXPECT_TRUE(is_subset(hrg, super));
        EXPECT_NEAR(2.0 * static_cast<double>(sub.size()) / 2000.0, a.d_girg(), 1e-12);
        EXPECT_NEAR(2.0 * static_cast<double>(super.size()) / 2000.0, a.D_girg(), 1e-12);
        // c_sub is tight: at c_sub itself some non-HRG pair joins.
        EXPECT_FALSE(is_subset(brute_force_girg(m.weights, m.positions, a.c_sub(), 0.0), hrg));

        for (const double c : {a.c_sub_below() * 0.5, 0.5 * (a.c_sub() + a.c_super())}) {
            const auto g = brute_force_girg(m.weights, m.positions, c, 0.0);
            const CouplingPoint pt = a.at(c);
            std::vector<Edge> missing, extra;
            std::set_difference(hrg.begin(), hrg.end(), g.begin(), g.end(), std::back_inserter(missing));
            std::set_difference(g.begin(), g.end(), hrg.begin(), hrg.end(), std::back_inserter(extra));
            EXPECT_EQ(pt.missing, missing.size());
            EXPECT_EQ(pt.extra, extra.size());
            EXPECT_EQ(a.girg_edges(c), g.size());
        }
    }
}

TEST(Coupling, CurveIsMonotone) {
    const CouplingAnalysis a(coords_for(3000, 10.0, 4));
    const auto curve = a.curve(a.c_sub_below() * 0.5, 33);
    ASSERT_EQ(curve.size(), 33u);
    for (std::size_t k = 1; k < curve.size(); ++k) {
        ASSERT_GT(curve[k].constant, curve[k - 1].constant);
        ASSERT_GE(curve[k].average_degree, curve[k - 1].average_degree);
        ASSERT_LE(curve[k].missing, curve[k - 1].missing);
        ASSERT_GE(curve[k].extra, curve[k - 1].extra);
    }
    EXPECT_EQ(curve.back().missing, 0u);
    EXPECT_EQ(curve.front().extra, 0u);
    EXPECT_THROW(a.girg_edges(std::nextafter(a.c_super(), INFINITY)), std::out_of_range);

    const double matched = a.degree_matched_constant();
    EXPECT_GE(a.girg_edges(matched), a.hrg_edges());
}

TEST(Coupling, CurveFormat) {
    const std::string text = format_coupling_curve({{0.5, 2.0, 3, 4}, {1.0, 8.5, 0, 9}});
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "constant,average_degree,missing,extra");
    std::getline(in, line);
    EXPECT_EQ(line, "0.5,2,3,4");
    std::getline(in, line);
    EXPECT_EQ(line, "1,8.5,0,9");
}
