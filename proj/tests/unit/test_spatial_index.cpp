#include <girg/degree_estimator.hpp>
#include <girg/grid.hpp>
#include <girg/spatial_index.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

using namespace girg;

namespace {

struct Instance {
    WeightSet weights;
    PositionSet positions;
    WeightBuckets buckets;
    LevelSchedule schedule;
};

Instance random_instance(std::uint64_t n, unsigned d, double ple, double temp, double degree, std::uint64_t seed) {
    Instance in;
    in.weights = sample_weights(n, ple, seed);
    in.positions = sample_positions(n, d, seed + 1);
    in.buckets = WeightBuckets(in.weights.values());
    const double c = estimate_c(degree, in.weights.values(), d, temp).constant;
    in.schedule = compute_levels(in.buckets, in.weights.total(), c, temp, d, depth_cap(n, d));
    return in;
}

} // namespace

TEST(Buckets, EqualWeightsGiveOneBucket) {
    const std::vector<double> w(100, 3.5);
    const WeightBuckets b(w);
    EXPECT_EQ(b.count(), 1u);
    EXPECT_EQ(b.size(0), 100u);
}

TEST(Buckets, HandBucketing) {
    const std::vector<double> w{1.0, 1.9, 2.1, 8.0};
    const WeightBuckets b(w);
    ASSERT_EQ(b.count(), 4u);
    EXPECT_EQ(b.bucket_of(0), 0u);
    EXPECT_EQ(b.bucket_of(1), 0u);
    EXPECT_EQ(b.bucket_of(2), 1u);
    EXPECT_TRUE(b.empty(2));
    EXPECT_EQ(b.bucket_of(3), 3u);
    EXPECT_EQ(b.max_weight(0), 1.9);
    EXPECT_EQ(b.max_weight(2), 8.0);  // empty bucket: upper boundary
    EXPECT_EQ(b.lower_boundary(1), 2.0);
}

TEST(Buckets, ParetoBucketCountAndRatio) {
    const WeightSet w = sample_weights(1 << 15, 2.5, 3);
    const WeightBuckets b(w.values());
    EXPECT_LE(b.count(), static_cast<unsigned>(std::floor(std::log2(w.max() / w.min()))) + 1);
    std::vector<double> lo(b.count(), INFINITY), hi(b.count(), 0.0);
    for (std::size_t v = 0; v < w.size(); ++v) {
        const unsigned i = b.bucket_of(v);
        ASSERT_GE(w[v], b.lower_boundary(i));
        ASSERT_LT(w[v], b.upper_boundary(i));
        lo[i] = std::min(lo[i], w[v]);
        hi[i] = std::max(hi[i], w[v]);
    }
    for (unsigned i = 0; i < b.count(); ++i)
        if (!b.empty(i)) {
            EXPECT_LE(hi[i] / lo[i], 2.0);
            EXPECT_EQ(hi[i], b.max_weight(i));
        }
}

TEST(Buckets, OverflowMergesIntoLastBucket) {
    std::vector<double> w{1.0, std::ldexp(1.0, 100), std::ldexp(1.0, 70)};
    const WeightBuckets b(w);
    EXPECT_EQ(b.count(), WeightBuckets::kMaxBuckets);
    EXPECT_EQ(b.bucket_of(1), WeightBuckets::kMaxBuckets - 1);
    EXPECT_EQ(b.bucket_of(2), WeightBuckets::kMaxBuckets - 1);
    EXPECT_EQ(b.max_weight(WeightBuckets::kMaxBuckets - 1), std::ldexp(1.0, 100));
}

TEST(Levels, ComparisonLevelForLength) {
    EXPECT_EQ(comparison_level_for_length(1.0, 10), 0u);
    EXPECT_EQ(comparison_level_for_length(7.0, 10), 0u);
    EXPECT_EQ(comparison_level_for_length(0.1, 10), 3u);
    EXPECT_EQ(comparison_level_for_length(0.1, 2), 2u);
    EXPECT_EQ(comparison_level_for_length(0.25, 10), 1u);
    EXPECT_EQ(comparison_level_for_length(0.2499, 10), 2u);
}

TEST(Levels, ExplicitScheduleLists) {
    const LevelSchedule single(1, {3}, {true});
    ASSERT_EQ(single.neighbor_pairs(3).size(), 1u);
    EXPECT_EQ(single.neighbor_pairs(3)[0], (BucketPair{0, 0}));
    EXPECT_TRUE(single.neighbor_pairs(2).empty());
    for (unsigned l = 0; l <= 3; ++l)
        EXPECT_EQ(buckets_for_cell_pair(single, l, false).size(), 1u);

    const LevelSchedule two(2, {4, 3, 3, 2}, {true, true});
    const auto distant = two.distant_pairs(3);
    std::set<std::pair<unsigned, unsigned>> got;
    for (const BucketPair& p : distant)
        got.insert({p.i, p.j});
    EXPECT_EQ(got, (std::set<std::pair<unsigned, unsigned>>{{0, 0}, {0, 1}}));
    EXPECT_EQ(two.insertion_level(0), 4u);
    EXPECT_EQ(two.insertion_level(1), 3u);
    EXPECT_EQ(two.max_depth(), 4u);
    EXPECT_THROW(LevelSchedule(2, {4, 3, 2, 2}, {true, true}), std::invalid_argument);
}

TEST(Levels, EmptyBucketsAreSkipped) {
    const LevelSchedule s(2, {2, 2, 2, 5}, {true, false});
    EXPECT_EQ(s.insertion_level(0), 2u);
    EXPECT_EQ(s.max_depth(), 2u);
    for (unsigned l = 0; l <= 5; ++l)
        for (const BucketPair& p : s.distant_pairs(l))
            EXPECT_TRUE(p.i == 0 && p.j == 0);
}

TEST(Levels, ComputedScheduleProperties) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const unsigned d = 1 + rng() % 3;
        const double temp = (rng() % 2) ? 0.0 : 0.5;
        const Instance in = random_instance(4096, d, 2.2 + 0.1 * (rng() % 8), temp, 5.0 + rng() % 20, rng());
        const LevelSchedule& s = in.schedule;
        const unsigned k = s.bucket_count();
        for (unsigned i = 0; i < k; ++i) {
            unsigned deepest = 0;
            for (unsigned j = 0; j < k; ++j) {
                ASSERT_EQ(s.comparison_level(i, j), s.comparison_level(j, i));
                ASSERT_LE(s.comparison_level(i, j), depth_cap(4096, d));
                if (j + 1 < k) {
                    ASSERT_GE(s.comparison_level(i, j), s.comparison_level(i, j + 1));
                }
                if (s.occupied(j))
                    deepest = std::max(deepest, s.comparison_level(i, j));
            }
            if (s.occupied(i)) {
                ASSERT_EQ(s.insertion_level(i), deepest);
            }
        }
    }
}

TEST(Levels, NeighborScaleContainsSaturatedPairs) {
    const Instance in = random_instance(2000, 2, 2.5, 0.4, 10.0, 5);
    const double c = estimate_c(10.0, in.weights.values(), 2, 0.4).constant;
    const ConnectionKernel kernel(c, 0.4, 2, in.weights.total());
    for (unsigned i = 0; i < in.buckets.count(); ++i)
        for (unsigned j = 0; j < in.buckets.count(); ++j) {
            const unsigned cl = in.schedule.comparison_level(i, j);
            const double len = kernel.saturation_length(in.buckets.max_weight(i), in.buckets.max_weight(j));
            if (cl == depth_cap(2000, 2) || len >= 1.0)
                continue;
            EXPECT_GE(std::ldexp(1.0, -static_cast<int>(cl)), len * (1.0 - 1e-12));
        }
}

TEST(Index, HandInstance) {
    const WeightSet w(std::vector<double>(4, 1.0));
    const PositionSet p(1, {0.1, 0.6, 0.2, 0.9});
    const WeightBuckets b(w.values());
    const LevelSchedule s(1, {1}, {true});
    const SpatialIndex index(w, p, b, s);
    const std::vector<std::uint64_t> order(index.sorted_vertices().begin(), index.sorted_vertices().end());
    EXPECT_EQ(order, (std::vector<std::uint64_t>{0, 2, 1, 3}));
    const auto prefix = index.prefix_sums(0);
    EXPECT_EQ(std::vector<std::size_t>(prefix.begin(), prefix.end()), (std::vector<std::size_t>{0, 2, 4}));
    const SlotRange left = index.vertices_in(0, {1, 0});
    ASSERT_EQ(left.size(), 2u);
    EXPECT_EQ(index.vertex(left.begin), 0u);
    EXPECT_EQ(index.vertex(left.begin + 1), 2u);
    EXPECT_EQ(index.vertices_in(0, {0, 0}).size(), 4u);
    EXPECT_THROW(index.vertices_in(0, {2, 0}), std::invalid_argument);
    for (std::size_t slot = 0; slot < 4; ++slot)
        EXPECT_EQ(index.slot_of(index.vertex(slot)), slot);
}

TEST(Index, SingleVertex) {
    const WeightSet w(std::vector<double>{1.0});
    const PositionSet p(2, {0.3, 0.7});
    const WeightBuckets b(w.values());
    const LevelSchedule s = compute_levels(b, w.total(), 1.0, 0.0, 2, depth_cap(1, 2));
    const SpatialIndex index(w, p, b, s);
    EXPECT_EQ(index.size(), 1u);
    EXPECT_EQ(index.vertices_in(0, {0, 0}).size(), 1u);
}

TEST(Index, EmptyCellGivesEmptyRange) {
    const WeightSet w(std::vector<double>(2, 1.0));
    const PositionSet p(1, {0.1, 0.2});
    const WeightBuckets b(w.values());
    const LevelSchedule s(1, {2}, {true});
    const SpatialIndex index(w, p, b, s);
    EXPECT_TRUE(index.vertices_in(0, {2, 3}).empty());
    EXPECT_TRUE(index.vertices_in(0, {1, 1}).empty());
}

TEST(Index, RangesMatchMembershipOracleAndPartitionBuckets) {
    for (const unsigned d : {1u, 2u, 3u}) {
        const Instance in = random_instance(10'000, d, 2.5, d == 2 ? 0.5 : 0.0, 10.0, 21 + d);
        const SpatialIndex index(in.weights, in.positions, in.buckets, in.schedule);
        for (unsigned i = 0; i < in.buckets.count(); ++i) {
            const unsigned top = index.insertion_level(i);
            std::vector<std::size_t> members;
            for (std::size_t v = 0; v < in.weights.size(); ++v)
                if (in.buckets.bucket_of(v) == i)
                    members.push_back(v);
            for (unsigned level = 0; level <= top; ++level) {
                std::vector<std::size_t> expected(std::size_t{1} << (d * level), 0);
                for (const std::size_t v : members)
                    ++expected[cell_of_point(in.positions.point(v), level).code];
                std::size_t covered = 0;
                for (std::uint64_t code = 0; code < expected.size(); ++code) {
                    const SlotRange r = index.vertices_in(i, {level, code});
                    ASSERT_EQ(r.begin, index.bucket_range(i).begin + covered);
                    ASSERT_EQ(r.size(), expected[code]);
                    for (std::size_t slot = r.begin; slot < r.end; ++slot) {
                        const auto v = index.vertex(slot);
                        ASSERT_EQ(in.buckets.bucket_of(v), i);
                        ASSERT_EQ(cell_of_point(in.positions.point(v), level).code, code);
                        ASSERT_EQ(index.weight(slot), in.weights[v]);
                    }
                    covered += r.size();
                }
                ASSERT_EQ(covered, members.size());
            }
        }
    }
}

TEST(Index, SortedWithinBucketsWithIdTieBreak) {
    const Instance in = random_instance(20'000, 2, 2.2, 0.0, 20.0, 4);
    const SpatialIndex index(in.weights, in.positions, in.buckets, in.schedule, 3);
    for (unsigned i = 0; i < in.buckets.count(); ++i) {
        const SlotRange r = index.bucket_range(i);
        for (std::size_t s = r.begin + 1; s < r.end; ++s) {
            const auto prev = index.vertex(s - 1), cur = index.vertex(s);
            const auto a = cell_of_point(in.positions.point(prev), index.insertion_level(i)).code;
            const auto b = cell_of_point(in.positions.point(cur), index.insertion_level(i)).code;
            ASSERT_TRUE(a < b || (a == b && prev < cur));
        }
    }
    const SpatialIndex serial(in.weights, in.positions, in.buckets, in.schedule, 1);
    EXPECT_TRUE(std::ranges::equal(index.sorted_vertices(), serial.sorted_vertices()));
}

TEST(Index, CellCountStaysLinear) {
    for (const unsigned d : {1u, 2u, 3u})
        for (const double ple : {2.2, 3.0}) {
            const std::uint64_t n = 1 << 14;
            const Instance in = random_instance(n, d, ple, 0.0, 10.0, 8);
            const SpatialIndex index(in.weights, in.positions, in.buckets, in.schedule);
            EXPECT_LE(index.cell_count(), 8 * n) << "d=" << d << " ple=" << ple;
        }
}

TEST(Index, PermutedInputGivesSameCellSets) {
    const Instance in = random_instance(3000, 2, 2.5, 0.0, 10.0, 9);
    std::vector<std::size_t> perm(3000);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), std::mt19937_64(1));
    std::vector<double> w(3000), x(6000);
    for (std::size_t k = 0; k < 3000; ++k) {
        w[k] = in.weights[perm[k]];
        x[2 * k] = in.positions.point(perm[k])[0];
        x[2 * k + 1] = in.positions.point(perm[k])[1];
    }
    const WeightSet pw(w);
    const PositionSet px(2, x);
    const WeightBuckets pb(pw.values());
    const SpatialIndex a(in.weights, in.positions, in.buckets, in.schedule);
    const SpatialIndex b(pw, px, pb, in.schedule);
    for (unsigned i = 0; i < in.buckets.count(); ++i) {
        const unsigned level = a.insertion_level(i);
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << (2 * level)); ++code) {
            const SlotRange ra = a.vertices_in(i, {level, code}), rb = b.vertices_in(i, {level, code});
            std::set<std::size_t> sa, sb;
            for (std::size_t s = ra.begin; s < ra.end; ++s)
                sa.insert(a.vertex(s));
            for (std::size_t s = rb.begin; s < rb.end; ++s)
                sb.insert(perm[b.vertex(s)]);
            ASSERT_EQ(sa, sb);
        }
    }
}
