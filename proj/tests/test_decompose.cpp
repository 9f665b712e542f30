#include <map>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "rkc/cost.hpp"
#include "rkc/decompose.hpp"
#include "rkc/kernels.hpp"

using namespace rkc;

TEST_CASE("ring_index hand values") {
    CHECK(ring_index(1.5) == 1);    // 1 < 1.5 <= 2
    CHECK(ring_index(100.0) == 7);  // 64 < 100 <= 128
    CHECK(ring_index(0.0) == kRingAtCenter);
    CHECK(ring_index(1.0) == 0);
    CHECK(ring_index(2.0) == 1);    // boundary: 1 < 2 <= 2
    CHECK(ring_index(64.0) == 6);
    CHECK(ring_index(0.75) == 0);   // 0.5 < 0.75 <= 1
    CHECK(ring_index(0.5) == -1);
}

TEST_CASE("partition_clusters assigns to nearest, smallest index on ties") {
    const CenterSet C = test::centers({{0}, {10}});
    const auto assign = partition_clusters(test::line({1, 9}), C);
    CHECK(assign == std::vector<int>{0, 1});

    const auto tie = partition_clusters(test::line({1}), test::centers({{0}, {2}}));
    CHECK(tie == std::vector<int>{0});
}

TEST_CASE("hand-executed greedy decomposition") {
    // distances {1.5, 3, 3.5, 100} from the origin, t = 0.5, z = 1:
    // ring costs 1.5 (i=1), 6.5 (i=2), 100 (i=7); total 108, threshold 54
    const Dataset X = test::line({1.5, 3, 3.5, 100});
    const std::vector<std::size_t> members{0, 1, 2, 3};
    const std::vector<double> dist{1.5, 3, 3.5, 100};
    std::vector<Ring> rings;
    std::vector<Group> groups;
    double total = 0.0;
    Point origin{0.0};
    decompose_cluster(X, members, dist, origin, 0, 1.0, 0.5, rings, groups,
                      &total);

    CHECK(total == 108.0);
    REQUIRE(rings.size() == 1);
    CHECK(rings[0].dyadic_index == 7);
    CHECK(rings[0].cost == 100.0);

    REQUIRE(groups.size() == 1);
    CHECK(groups[0].lo == 1);
    CHECK(groups[0].hi == 2);
    CHECK(groups[0].cost == 8.0);
    CHECK(groups[0].members == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("single nonempty ring at t=1 comes out heavy") {
    const Dataset X = test::line({1.1, 1.2});
    const std::vector<std::size_t> members{0, 1};
    const std::vector<double> dist{1.1, 1.2};
    std::vector<Ring> rings;
    std::vector<Group> groups;
    Point origin{0.0};
    decompose_cluster(X, members, dist, origin, 0, 1.0, 1.0, rings, groups);
    CHECK(rings.size() == 1);
    CHECK(groups.empty());
}

TEST_CASE("points on the center form their own zero-cost group") {
    const Dataset X = test::line({0, 0, 3});
    const std::vector<std::size_t> members{0, 1, 2};
    const std::vector<double> dist{0, 0, 3};
    std::vector<Ring> rings;
    std::vector<Group> groups;
    Point origin{0.0};
    decompose_cluster(X, members, dist, origin, 0, 1.0, 0.9, rings, groups);
    REQUIRE(groups.size() >= 1);
    CHECK(groups[0].lo == kRingAtCenter);
    CHECK(groups[0].cost == 0.0);
    CHECK(groups[0].weight == 2.0);
    CHECK(groups[0].degenerate);
}

TEST_CASE("decomposition invariants on random clusters") {
    Rng rng(404);
    for (int round = 0; round < 60; ++round) {
        const std::size_t n = 5 + static_cast<std::size_t>(rng.below(400));
        const Dataset X = test::random_dataset(rng, n, 3, 100.0, false);
        const CenterSet C = test::random_centers(rng, 1 + rng.below(4), 3, 100.0);
        const double z = static_cast<double>(1 + rng.below(3));
        const double t = 0.01 + rng.uniform() * 0.99;

        const Decomposition dec = decompose(X, C, z, t);

        // every row in exactly one ring or group
        std::set<std::size_t> seen;
        std::size_t count = 0;
        for (const Ring& r : dec.rings)
            for (std::size_t row : r.members) {
                seen.insert(row);
                ++count;
            }
        for (const Group& g : dec.groups)
            for (std::size_t row : g.members) {
                seen.insert(row);
                ++count;
            }
        CHECK(count == n);
        CHECK(seen.size() == n);

        // per-cluster checks: group cost bound, heavy-ring count, disjoint
        // consecutive intervals, members matching the interval
        std::map<int, std::size_t> heavy_per_cluster;
        for (const Ring& r : dec.rings) ++heavy_per_cluster[r.cluster_index];
        for (auto [c, cnt] : heavy_per_cluster) {
            CHECK(dec.cluster_cost[c] > 0.0);
            CHECK(static_cast<double>(cnt) <= 1.0 / t + 1e-9);
        }
        for (const Group& g : dec.groups) {
            CHECK(g.cost <= t * dec.cluster_cost[g.cluster_index] + 1e-12);
            CHECK(g.lo <= g.hi);
        }
        std::map<int, std::vector<std::pair<int, int>>> intervals;
        for (const Group& g : dec.groups)
            intervals[g.cluster_index].push_back({g.lo, g.hi});
        for (auto& [c, iv] : intervals) {
            std::sort(iv.begin(), iv.end());
            for (std::size_t i = 1; i < iv.size(); ++i)
                CHECK(iv[i - 1].second < iv[i].first);
        }
        // group members = union of its interval's rings: every member's
        // dyadic index falls inside [lo, hi] and no ring claims it
        std::vector<double> dist_all(X.size());
        std::vector<int> idx_all(X.size());
        kernels::nearest_center(X, C, dist_all, idx_all);
        for (const Group& g : dec.groups)
            for (std::size_t row : g.members) {
                const int ri = ring_index(dist_all[row]);
                CHECK(ri >= g.lo);
                CHECK(ri <= g.hi);
            }

        // determinism
        const Decomposition again = decompose(X, C, z, t);
        CHECK(again.rings.size() == dec.rings.size());
        CHECK(again.groups.size() == dec.groups.size());
    }
}
