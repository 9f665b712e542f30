#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "rkc/approx.hpp"
#include "rkc/cost.hpp"

using namespace rkc;

namespace {

// two tight clusters plus planted far outliers, 1-D
Dataset planted_instance(std::size_t per_cluster, std::size_t outliers) {
    Dataset X;
    std::int64_t id = 0;
    Rng rng(31);
    for (std::size_t i = 0; i < per_cluster; ++i) {
        double x = rng.uniform();
        X.add(PointView{&x, 1}, 1.0, id++);
    }
    for (std::size_t i = 0; i < per_cluster; ++i) {
        double x = 1000.0 + rng.uniform();
        X.add(PointView{&x, 1}, 1.0, id++);
    }
    for (std::size_t i = 0; i < outliers; ++i) {
        double x = 1e6 + static_cast<double>(i);
        X.add(PointView{&x, 1}, 1.0, id++);
    }
    return X;
}

}  // namespace

TEST_CASE("zero-cost instance recovers all k points") {
    const Dataset X = test::from_coords({{0, 0}, {100, 0}, {0, 100}, {70, 70}});
    const auto sol = tri_criteria_approx(X, 4, 2.0, 0.0, 1.0, 1.0, 9);
    CHECK(sol.centers.size() == 4);
    CHECK(sol.achieved_cost == 0.0);
}

TEST_CASE("planted outliers cannot dominate the seeding") {
    const Dataset X = planted_instance(100, 5);
    const CenterSet truth = test::centers({{0.5}, {1000.5}});
    const double planted = robust_cost(X, truth, 2.0, 5.0).cost;

    const auto sol = tri_criteria_approx(X, 2, 2.0, 5.0, 2.0, 1.0, 17);
    CHECK(sol.centers.size() <= 4);
    CHECK(sol.achieved_cost <= 10.0 * planted);
}

TEST_CASE("tri-criteria determinism and size bound") {
    Rng rng(3);
    const Dataset X = test::random_dataset(rng, 500, 3, 20.0);
    const auto a = tri_criteria_approx(X, 5, 1.0, 10.0, 1.5, 2.0, 777);
    const auto b = tri_criteria_approx(X, 5, 1.0, 10.0, 1.5, 2.0, 777);
    CHECK(a.centers.coords == b.centers.coords);
    CHECK(a.achieved_cost == b.achieved_cost);
    CHECK(a.centers.size() <= 8);  // ceil(1.5 * 5)

    const auto c = tri_criteria_approx(X, 5, 1.0, 10.0, 1.5, 2.0, 778);
    CHECK(a.centers.coords != c.centers.coords);
}

TEST_CASE("tri-criteria input validation") {
    const Dataset X = test::line({1, 2});
    CHECK_THROWS_AS(tri_criteria_approx(X, 3, 1.0, 0.0, 1.0, 1.0, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(tri_criteria_approx(Dataset{}, 1, 1.0, 0.0, 1.0, 1.0, 1),
                    std::invalid_argument);
}

TEST_CASE("find_outliers basics") {
    const CenterSet C = test::centers({{0}});
    const auto L = find_outliers(test::line({0, 1, 2, 50}), C, 1.0);
    REQUIRE(L.ids.size() == 1);
    CHECK(L.ids[0] == 3);
    CHECK(L.removed_weight[0] == 1.0);
    CHECK(!L.boundary_id.has_value());

    CHECK(find_outliers(test::line({0, 1}), C, 0.0).ids.empty());
    CHECK_THROWS_AS(find_outliers(test::line({0, 1}), C, 5.0),
                    std::invalid_argument);
}

TEST_CASE("removing find_outliers output reproduces the robust cost") {
    Rng rng(2718);
    for (int round = 0; round < 30; ++round) {
        const Dataset X = test::random_dataset(rng, 80, 2, 10.0, false);
        const CenterSet C = test::random_centers(rng, 3, 2, 10.0);
        const double z = static_cast<double>(1 + rng.below(2));
        const double count = rng.uniform() * 0.5 * X.total_weight();

        const auto L = find_outliers(X, C, count);
        Dataset trimmed = X;
        for (std::size_t j = 0; j < L.rows.size(); ++j)
            trimmed.weights[L.rows[j]] -= L.removed_weight[j];

        const double direct = robust_cost(X, C, z, count).cost;
        const double via_removal = cost_vanilla(trimmed, C, z);
        CHECK(test::close_rel(direct, via_removal, 1e-9));
        CHECK(test::close_rel(L.total_removed, count, 1e-9));
    }
}
