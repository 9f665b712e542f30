#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "rkc/cost.hpp"

using namespace rkc;

TEST_CASE("nearest_center basics") {
    const CenterSet C = test::centers({{0, 0}, {3, 4}});
    auto [i0, d0] = nearest_center(Point{0, 0}, C);
    CHECK(i0 == 0);
    CHECK(d0 == 0.0);

    auto [i1, d1] = nearest_center(Point{3, 4}, test::centers({{0, 0}}));
    CHECK(i1 == 0);
    CHECK(d1 == 5.0);

    // tie broken to the smaller index
    auto [i2, d2] = nearest_center(Point{1}, test::centers({{0}, {2}}));
    CHECK(i2 == 0);
    CHECK(d2 == 1.0);

    CHECK_THROWS_AS(nearest_center(Point{1, 2, 3}, C), std::invalid_argument);
}

TEST_CASE("cost_vanilla hand values") {
    const Dataset X = test::line({0, 10});
    const CenterSet C = test::centers({{0}});
    CHECK(cost_vanilla(X, C, 1.0) == 10.0);
    CHECK(cost_vanilla(X, C, 2.0) == 100.0);

    const Dataset W = test::weighted_line({{0.0, 3.0}});
    CHECK(cost_vanilla(W, C, 1.0) == 0.0);
    CHECK(cost_vanilla(W, C, 7.0) == 0.0);

    CHECK(cost_vanilla(Dataset{}, C, 2.0) == 0.0);
}

TEST_CASE("robust_cost hand values and boundary split") {
    const CenterSet C = test::centers({{0}});

    auto r = robust_cost(test::line({0, 10, 100}), C, 1.0, 1.0);
    CHECK(r.cost == 10.0);
    CHECK(r.outlier_mass_removed == 1.0);
    CHECK(!r.boundary_id.has_value());

    // one unit removed from the weight-2 point at 10
    auto f = robust_cost(test::weighted_line({{0.0, 1.0}, {10.0, 2.0}}), C,
                         1.0, 1.0);
    CHECK(f.cost == 10.0);
    CHECK(f.boundary_id.has_value());
    CHECK(*f.boundary_id == 1);
    CHECK(f.boundary_removed_weight == 1.0);

    CHECK_THROWS_AS(robust_cost(test::line({0, 1}), C, 1.0, 3.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(robust_cost(test::line({0, 1}), C, 1.0, -1.0),
                    std::invalid_argument);
}

TEST_CASE("robust_cost is zero exactly when surviving mass sits on centers") {
    const CenterSet C = test::centers({{0}});
    CHECK(robust_cost(test::line({0, 5}), C, 1.0, 1.0).cost == 0.0);
    CHECK(robust_cost(test::line({0, 0, 0}), C, 2.0, 0.0).cost == 0.0);
    CHECK(robust_cost(test::line({1, 5}), C, 1.0, 1.0).cost > 0.0);
}

TEST_CASE("robust_cost with m=0 equals cost_vanilla exactly") {
    Rng rng(7);
    for (int round = 0; round < 20; ++round) {
        const Dataset X = test::random_dataset(rng, 200, 3, 10.0, false);
        const CenterSet C = test::random_centers(rng, 4, 3, 10.0);
        const double z = 1.0 + rng.uniform() * 2.0;
        CHECK(robust_cost(X, C, z, 0.0).cost == cost_vanilla(X, C, z));
    }
}

TEST_CASE("robust_cost monotone non-increasing in m") {
    Rng rng(11);
    const Dataset X = test::random_dataset(rng, 150, 2, 5.0, false);
    const CenterSet C = test::random_centers(rng, 3, 2, 5.0);
    const double total = X.total_weight();
    for (double z : {1.0, 2.0}) {
        double prev = robust_cost(X, C, z, 0.0).cost;
        for (double frac : {0.1, 0.25, 0.5, 0.75, 1.0}) {
            const double cur = robust_cost(X, C, z, frac * total).cost;
            CHECK(cur <= prev * (1.0 + 1e-12) + 1e-12);
            prev = cur;
        }
        CHECK(robust_cost(X, C, z, total).cost == 0.0);
    }
}

TEST_CASE("brute force oracle hand values") {
    const CenterSet C = test::centers({{0}});
    CHECK(brute_force_robust_cost(test::line({1, 2, 3}), C, 1.0, 1) == 3.0);
    CHECK(brute_force_robust_cost(test::line({1, 2, 3}), C, 2.0, 2) == 1.0);
    CHECK_THROWS(brute_force_robust_cost(test::line(std::vector<double>(13, 0.0)),
                                         C, 1.0, 1));
}

TEST_CASE("robust_cost equals the subset-enumeration oracle") {
    Rng rng(123);
    for (int round = 0; round < 300; ++round) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.below(11));
        const std::size_t d = 1 + static_cast<std::size_t>(rng.below(3));
        const std::size_t k = 1 + static_cast<std::size_t>(rng.below(3));
        const int m = static_cast<int>(rng.below(std::min<std::uint64_t>(4, n + 1)));
        const double z = static_cast<double>(1 + rng.below(3));
        const Dataset X = test::random_dataset(rng, n, d, 3.0);
        const CenterSet C = test::random_centers(rng, k, d, 3.0);
        const double fast = robust_cost(X, C, z, static_cast<double>(m)).cost;
        const double slow = brute_force_robust_cost(X, C, z, m);
        CHECK(test::close_rel(fast, slow, 1e-9));
    }
}

TEST_CASE("integral identity hand values") {
    const CenterSet C = test::centers({{0}});
    const Dataset X = test::line({0, 10, 100});
    CHECK(test::close_rel(robust_cost_integral(X, C, 1.0, 1.0, 1), 10.0, 1e-12));
    CHECK(test::close_rel(robust_cost_integral(X, C, 2.0, 0.0, 1), 10100.0,
                          1e-12));
}

TEST_CASE("integral identity matches the sorted-drop implementation") {
    Rng rng(99);
    for (int round = 0; round < 150; ++round) {
        const Dataset X = test::random_dataset(rng, 20, 2, 4.0, false);
        const CenterSet C = test::random_centers(rng, 3, 2, 4.0);
        for (double z : {1.0, 2.0, 3.0}) {
            for (double m : {0.0, 0.5, 2.0}) {
                const double a = robust_cost(X, C, z, m).cost;
                const int steps = 1 + static_cast<int>(rng.below(4));
                const double b = robust_cost_integral(X, C, z, m, steps);
                CHECK(test::close_rel(a, b, 1e-9));
            }
        }
    }
}

TEST_CASE("robust_cost_multi matches individual calls bitwise") {
    Rng rng(5);
    const Dataset X = test::random_dataset(rng, 100, 2, 8.0, false);
    const CenterSet C = test::random_centers(rng, 3, 2, 8.0);
    const std::vector<double> ms{0.0, 1.0, 2.5, 7.0};
    const auto multi = robust_cost_multi(X, C, 2.0, ms);
    for (std::size_t t = 0; t < ms.size(); ++t)
        CHECK(multi[t] == robust_cost(X, C, 2.0, ms[t]).cost);
}

TEST_CASE("generalized triangle inequalities hold") {
    CHECK(check_triangle_lemma(0, 0, 0.5, 2.0) ==
          std::pair<bool, bool>{true, true});
    CHECK(check_triangle_lemma(1, 1, 0.5, 2.0) ==
          std::pair<bool, bool>{true, true});

    Rng rng(2024);
    int failures = 0;
    for (int i = 0; i < 100000; ++i) {
        const double a = rng.uniform() * 10.0;
        const double b = rng.uniform() * 10.0;
        const double delta = 1e-3 + rng.uniform() * 0.997;
        const double z = 1.0 + rng.uniform() * 3.0;
        const auto [ok1, ok2] = check_triangle_lemma(a, b, delta, z);
        failures += !(ok1 && ok2);
    }
    CHECK(failures == 0);
}
