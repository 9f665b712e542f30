#include <cmath>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "rkc/cost.hpp"
#include "rkc/io.hpp"
#include "rkc/kernels.hpp"
#include "rkc/solvers.hpp"

using namespace rkc;

namespace {

SynthResult separable(int k, std::size_t per, std::uint64_t seed) {
    SynthSpec spec;
    spec.clusters = k;
    spec.points_per_cluster = per;
    spec.dim = 2;
    spec.separation = 50.0;
    spec.outliers = 0;
    spec.seed = seed;
    return make_synthetic(spec);
}

}  // namespace

TEST_CASE("robust_seed hits every separable cluster most of the time") {
    int good = 0;
    const int trials = 40;
    for (int t = 0; t < trials; ++t) {
        const SynthResult s = separable(3, 60, 1234 + t);
        const CenterSet seeds = robust_seed(s.data, 3, 0.0, 2.0,
                                            derive_seed(88, t));
        // every seed within a cluster radius of a distinct true center
        std::set<std::size_t> matched;
        bool ok = true;
        for (std::size_t j = 0; j < seeds.size(); ++j) {
            auto [idx, d] = nearest_center(seeds.center(j), s.true_centers);
            if (d > 6.0 || !matched.insert(idx).second) ok = false;
        }
        good += ok;
    }
    CHECK(good >= trials * 8 / 10);
}

TEST_CASE("robust_seed determinism and k=1") {
    Rng rng(4);
    const Dataset X = test::random_dataset(rng, 200, 2, 5.0);
    const CenterSet a = robust_seed(X, 4, 3.0, 2.0, 99);
    const CenterSet b = robust_seed(X, 4, 3.0, 2.0, 99);
    CHECK(a.coords == b.coords);

    const CenterSet one = robust_seed(X, 1, 0.0, 2.0, 7);
    CHECK(one.size() == 1);
}

TEST_CASE("lloyd fixed point converges immediately") {
    // two symmetric pairs; the optimal centers are the pair midpoints
    const Dataset X = test::from_coords({{-1, 0}, {1, 0}, {99, 0}, {101, 0}});
    const CenterSet init = test::centers({{0, 0}, {100, 0}});
    const SolveResult res = lloyd_with_outliers(X, init, 0.0);
    CHECK(res.iterations == 1);
    CHECK(res.cost_on_input == robust_cost(X, init, 2.0, 0.0).cost);
    CHECK(res.centers.coords == init.coords);
}

TEST_CASE("lloyd cost trace is non-increasing") {
    SynthSpec spec;
    spec.clusters = 4;
    spec.points_per_cluster = 300;
    spec.dim = 3;
    spec.separation = 8.0;
    spec.outliers = 30;
    spec.seed = 5;
    const Dataset X = make_synthetic(spec).data;

    Rng rng(6);
    const CenterSet init = test::random_centers(rng, 4, 3, 20.0);
    const SolveResult res = lloyd_with_outliers(X, init, 30.0, 2.0, 50, 1e-9);
    REQUIRE(res.cost_trace.size() >= 2);
    for (std::size_t i = 1; i < res.cost_trace.size(); ++i)
        CHECK(res.cost_trace[i] <=
              res.cost_trace[i - 1] * (1.0 + 1e-9) + 1e-12);
    CHECK(res.cost_on_input == res.cost_trace.back());
}

TEST_CASE("lloyd with nearly all mass removed drives the cost to zero") {
    Rng rng(12);
    const Dataset X = test::random_dataset(rng, 50, 2, 5.0);
    const CenterSet init = test::centers({{0.0, 0.0}});
    const SolveResult res =
        lloyd_with_outliers(X, init, X.total_weight() - 0.5, 2.0, 30, 1e-9);
    CHECK(res.cost_on_input <= 1e-6);
}

TEST_CASE("lloyd rejects z != 2") {
    const Dataset X = test::line({0, 1});
    CHECK_THROWS_AS(lloyd_with_outliers(X, test::centers({{0}}), 0.0, 1.0),
                    std::invalid_argument);
}

TEST_CASE("local search recovers the optimum from a poisoned pool") {
    const SynthResult s = separable(3, 80, 77);
    // pool: the three true centers (as data points near them) plus junk
    CenterSet pool;
    pool.dim = 2;
    for (std::size_t c = 0; c < s.true_centers.size(); ++c) {
        auto [row, d] = std::pair<std::size_t, double>{0, 1e300};
        for (std::size_t i = 0; i < s.data.size(); ++i) {
            const double dd = std::sqrt(kernels::squared_distance(
                s.data.point(i), s.true_centers.center(c)));
            if (dd < d) {
                d = dd;
                row = i;
            }
        }
        pool.add(s.data.point(row));
    }
    Rng rng(31);
    for (int j = 0; j < 12; ++j) {
        Point junk{500.0 + rng.uniform() * 100.0, 500.0 + rng.uniform() * 100.0};
        pool.add(junk);
    }

    const SolveResult res =
        local_search_robust_median(s.data, pool, 3, 0.0, 1.0, 50);
    // compare against the best possible subset: the three near-center points
    CenterSet best;
    for (std::size_t c = 0; c < 3; ++c) best.add(pool.center(c));
    const double best_cost = robust_cost(s.data, best, 1.0, 0.0).cost;
    CHECK(res.cost_on_input <= best_cost * (1.0 + 1e-9));

    for (std::size_t i = 1; i < res.cost_trace.size(); ++i)
        CHECK(res.cost_trace[i] < res.cost_trace[i - 1]);
}

TEST_CASE("local search trivial cases") {
    const Dataset X = test::line({0, 1, 2});
    const CenterSet pool = test::centers({{1}});
    const SolveResult res = local_search_robust_median(X, pool, 1, 0.0);
    CHECK(res.iterations == 0);
    CHECK(res.centers.coords == pool.coords);

    CHECK_THROWS_AS(local_search_robust_median(X, pool, 2, 0.0),
                    std::invalid_argument);
}

TEST_CASE("solvers accept weighted input") {
    // weighted coreset-like data: lloyd and ls both run and stay monotone
    Dataset X;
    Rng rng(3);
    for (int i = 0; i < 60; ++i) {
        Point p{rng.uniform() * 10.0, rng.uniform() * 10.0};
        X.add(p, 0.5 + rng.uniform() * 4.0, i);
    }
    const CenterSet init = robust_seed(X, 3, 2.5, 2.0, 11);
    const SolveResult ll = lloyd_with_outliers(X, init, 2.5, 2.0, 40, 1e-8);
    for (std::size_t i = 1; i < ll.cost_trace.size(); ++i)
        CHECK(ll.cost_trace[i] <= ll.cost_trace[i - 1] * (1.0 + 1e-9) + 1e-12);

    const CenterSet pool = candidate_pool(X, 20, 13);
    const SolveResult ls = local_search_robust_median(X, pool, 3, 2.5, 1.0, 30);
    CHECK(ls.cost_on_input ==
          robust_cost(X, ls.centers, 1.0, 2.5).cost);
}

TEST_CASE("candidate_pool basics") {
    Rng rng(9);
    const Dataset X = test::random_dataset(rng, 30, 2, 1.0);
    const CenterSet all = candidate_pool(X, 30, 1);
    CHECK(all.size() == 30);

    const CenterSet some = candidate_pool(X, 10, 1);
    const CenterSet again = candidate_pool(X, 10, 1);
    CHECK(some.coords == again.coords);
    CHECK_THROWS_AS(candidate_pool(X, 31, 1), std::invalid_argument);

    // pool points are data points
    for (std::size_t j = 0; j < some.size(); ++j) {
        bool found = false;
        for (std::size_t i = 0; i < X.size() && !found; ++i) {
            const PointView p = X.point(i);
            const PointView c = some.center(j);
            found = std::equal(p.begin(), p.end(), c.begin());
        }
        CHECK(found);
    }
}
